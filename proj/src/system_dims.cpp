#include "tdc/system_dims.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "tdc/errors.hpp"

namespace tdc {

SystemDims::SystemDims(std::vector<std::string> labels, std::vector<int> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
  if (labels_.size() != dims_.size()) {
    throw DimensionError("SystemDims: " + std::to_string(labels_.size()) + " labels but " +
                         std::to_string(dims_.size()) + " dimensions");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (dims_[i] < 1) {
      throw DimensionError("SystemDims: dimension of '" + labels_[i] + "' must be >= 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[i] == labels_[j]) {
        throw LabelError("SystemDims: duplicate label '" + labels_[i] + "'");
      }
    }
  }
}

SystemDims SystemDims::single(std::string label, int dim) {
  return SystemDims({std::move(label)}, {dim});
}

int SystemDims::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
}

bool SystemDims::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t SystemDims::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw LabelError("unknown system label '" + std::string(label) + "' in " + to_string());
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

SystemDims SystemDims::concat(const SystemDims& other) const {
  auto labels = labels_;
  auto dims = dims_;
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return SystemDims(std::move(labels), std::move(dims));
}

SystemDims SystemDims::select(std::span<const std::size_t> positions) const {
  std::vector<std::string> labels;
  std::vector<int> dims;
  for (auto p : positions) {
    labels.push_back(labels_.at(p));
    dims.push_back(dims_.at(p));
  }
  return SystemDims(std::move(labels), std::move(dims));
}

std::vector<bool> SystemDims::mask(std::span<const std::string> labels) const {
  std::vector<bool> m(size(), false);
  for (const auto& l : labels) m[index_of(l)] = true;
  return m;
}

SystemDims SystemDims::renamed(std::string_view from, std::string to) const {
  auto labels = labels_;
  labels[index_of(from)] = std::move(to);
  return SystemDims(std::move(labels), dims_);
}

std::string SystemDims::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ", ";
    s += labels_[i] + ":" + std::to_string(dims_[i]);
  }
  return s + "]";
}

}  // namespace tdc
