#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tdc {

/// Ordered list of labelled tensor factors. Factor order is the Kronecker
/// order: the last factor is the fastest-varying index.
class SystemDims {
 public:
  SystemDims() = default;
  SystemDims(std::vector<std::string> labels, std::vector<int> dims);

  static SystemDims single(std::string label, int dim);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& dims() const { return dims_; }
  int total() const;

  bool contains(std::string_view label) const;
  /// Position of `label`; throws LabelError when absent.
  std::size_t index_of(std::string_view label) const;
  int dim(std::string_view label) const { return dims_[index_of(label)]; }

  /// Concatenation; throws LabelError on a duplicate label.
  SystemDims concat(const SystemDims& other) const;
  /// Factors at the given positions, in that order.
  SystemDims select(std::span<const std::size_t> positions) const;
  /// Mask with `true` at the positions of `labels`. Throws on unknown labels.
  std::vector<bool> mask(std::span<const std::string> labels) const;
  /// Copy with one label renamed.
  SystemDims renamed(std::string_view from, std::string to) const;

  std::string to_string() const;

  friend bool operator==(const SystemDims&, const SystemDims&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<int> dims_;
};

}  // namespace tdc
