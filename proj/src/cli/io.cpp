#include "tdc/cli/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tdc/errors.hpp"

namespace tdc::cli {

using nlohmann::json;

ParseError::ParseError(const std::string& what, int line, std::string field)
    : std::runtime_error(what), line_(line), field_(std::move(field)) {}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ParseError("field " + (field.empty() ? std::string("/") : field) + ": " + message, 0,
                   field);
}

const json& member(const json& j, const std::string& field, const char* key) {
  if (!j.is_object()) fail(field, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(field + "/" + key, "missing");
  return *it;
}

int positive_int(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 1) fail(field, "expected a positive integer");
  return j.get<int>();
}

std::vector<int> dims_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of dimensions");
  std::vector<int> dims;
  for (std::size_t i = 0; i < j.size(); ++i) {
    dims.push_back(positive_int(j[i], field + "/" + std::to_string(i)));
  }
  return dims;
}

std::vector<std::string> default_labels(std::size_t n) {
  if (n == 2) return {"A", "B"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("S" + std::to_string(i));
  return out;
}

std::vector<std::string> labels_from_json(const json& j, const std::string& field,
                                          std::size_t n) {
  if (!j.is_object() || !j.contains("labels")) return default_labels(n);
  const json& l = j["labels"];
  if (!l.is_array() || l.size() != n) fail(field + "/labels", "expected one label per factor");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!l[i].is_string()) fail(field + "/labels/" + std::to_string(i), "expected a string");
    out.push_back(l[i].get<std::string>());
  }
  return out;
}

int total(const std::vector<int>& dims) {
  int t = 1;
  for (int d : dims) t *= d;
  return t;
}

template <typename F>
auto located(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    fail(field, e.what());
  }
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
    throw ParseError(source + ":" + std::to_string(line) + ": " + e.what(), line, "");
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0, "");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) fail(field + "/0", "expected an array of entries");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rf = field + "/" + std::to_string(r);
    if (!j[r].is_array()) fail(rf, "expected an array of entries");
    if (j[r].size() != cols) fail(rf, "row length differs from row 0");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      const std::string ef = rf + "/" + std::to_string(c);
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        fail(ef, "expected [re, im]");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

DensityOp state_from_json(const json& j, const std::string& field) {
  const auto dims = dims_from_json(member(j, field, "dims"), field + "/dims");
  const auto labels = labels_from_json(j, field, dims.size());
  const Matrix m = matrix_from_json(member(j, field, "matrix"), field + "/matrix");
  if (m.rows() != total(dims) || m.cols() != total(dims)) {
    fail(field + "/matrix", "size does not match dims");
  }
  return located(field, [&] {
    return DensityOp(SystemDims(labels, dims), m);
  });
}

Channel channel_from_json(const json& j, const std::string& field) {
  const auto din = dims_from_json(member(j, field, "dims_in"), field + "/dims_in");
  const auto dout = dims_from_json(member(j, field, "dims_out"), field + "/dims_out");
  const json& kj = member(j, field, "kraus");
  if (!kj.is_array() || kj.empty()) fail(field + "/kraus", "expected a non-empty array");
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < kj.size(); ++i) {
    const std::string kf = field + "/kraus/" + std::to_string(i);
    Matrix k = matrix_from_json(kj[i], kf);
    if (k.rows() != total(dout) || k.cols() != total(din)) fail(kf, "wrong shape");
    kraus.push_back(std::move(k));
  }
  auto name = [](const std::vector<int>& d, const char* base) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < d.size(); ++i) {
      out.push_back(d.size() == 1 ? std::string(base) : base + std::to_string(i));
    }
    return out;
  };
  return located(field, [&] {
    return Channel::from_kraus(SystemDims(name(din, "B"), din), SystemDims(name(dout, "C"), dout),
                               std::move(kraus));
  });
}

TeleportProtocol protocol_from_json(const json& j) {
  const int dim_c = positive_int(member(j, "", "dim_c"), "/dim_c");
  const DensityOp rho = state_from_json(member(j, "", "state"), "/state");
  if (rho.dims().size() != 2) fail("/state/dims", "resource state must be bipartite");
  const int da = rho.dims().dims()[0];
  const json& pj = member(j, "", "povm");
  if (!pj.is_array() || pj.empty()) fail("/povm", "expected a non-empty array");
  std::vector<Matrix> effects;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    effects.push_back(matrix_from_json(pj[i], "/povm/" + std::to_string(i)));
  }
  const json& dj = member(j, "", "decoders");
  if (!dj.is_array()) fail("/decoders", "expected an array");
  std::vector<Channel> decoders;
  for (std::size_t i = 0; i < dj.size(); ++i) {
    decoders.push_back(channel_from_json(dj[i], "/decoders/" + std::to_string(i)));
  }
  return located("", [&] {
    const DensityOp resource(SystemDims({label::A, label::B}, rho.dims().dims()), rho.matrix());
    return TeleportProtocol(resource,
                            Povm(SystemDims({label::Cin, label::A}, {dim_c, da}), std::move(effects)),
                            std::move(decoders), dim_c);
  });
}

json state_to_json(const DensityOp& rho) {
  return {{"type", "state"},
          {"dims", rho.dims().dims()},
          {"labels", rho.dims().labels()},
          {"matrix", matrix_to_json(rho.matrix())}};
}

json channel_to_json(const Channel& ch) {
  json kraus = json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  return {{"type", "channel"},
          {"dims_in", ch.in_dims().dims()},
          {"dims_out", ch.out_dims().dims()},
          {"kraus", std::move(kraus)}};
}

json protocol_to_json(const TeleportProtocol& p) {
  json povm = json::array();
  for (const auto& e : p.povm().effects()) povm.push_back(matrix_to_json(e.matrix()));
  json decoders = json::array();
  for (const auto& d : p.decoders()) decoders.push_back(channel_to_json(d));
  return {{"type", "protocol"},
          {"dim_c", p.dim_c()},
          {"state", state_to_json(p.rho_ab())},
          {"povm", std::move(povm)},
          {"decoders", std::move(decoders)}};
}

DensityOp read_state(const std::filesystem::path& path) {
  return state_from_json(read_json_file(path));
}

Channel read_channel(const std::filesystem::path& path) {
  return channel_from_json(read_json_file(path));
}

TeleportProtocol read_protocol(const std::filesystem::path& path) {
  return protocol_from_json(read_json_file(path));
}

}  // namespace tdc::cli
