#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "tdc/channel.hpp"
#include "tdc/teleport.hpp"

#include <json.hpp>

namespace tdc::cli {

/// Malformed input file. `line` is 1-based and 0 when the problem is not a
/// syntax error; `field` is a JSON pointer to the offending value.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, std::string field);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

/// File schemas (all JSON, complex numbers as [re, im], matrices row-major):
///
///   state:    {"type": "state", "dims": [dA, dB], "labels": ["A", "B"],
///              "matrix": [[[re, im], ...], ...]}
///   channel:  {"type": "channel", "dims_in": [d], "dims_out": [d'],
///              "kraus": [matrix, ...]}
///   protocol: {"type": "protocol", "dim_c": d, "state": state,
///              "povm": [matrix on (C',A), ...], "decoders": [channel, ...]}
///
/// "labels" is optional; bipartite states default to A, B and channels to
/// B -> C.
nlohmann::json parse_json_text(const std::string& text, const std::string& source);
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json matrix_to_json(const Matrix& m);

DensityOp state_from_json(const nlohmann::json& j, const std::string& field = "");
Channel channel_from_json(const nlohmann::json& j, const std::string& field = "");
TeleportProtocol protocol_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const DensityOp& rho);
nlohmann::json channel_to_json(const Channel& ch);
nlohmann::json protocol_to_json(const TeleportProtocol& p);

DensityOp read_state(const std::filesystem::path& path);
Channel read_channel(const std::filesystem::path& path);
TeleportProtocol read_protocol(const std::filesystem::path& path);

}  // namespace tdc::cli
