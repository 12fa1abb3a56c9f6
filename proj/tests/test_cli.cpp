#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "tdc/cli/commands.hpp"
#include "tdc/cli/io.hpp"
#include "tdc/dense.hpp"
#include "tdc/tolerances.hpp"
#include "tdc/witness.hpp"

using namespace tdc;
using namespace tdc::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "tdc");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("tdc-cli-" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump(const std::string& path, const nlohmann::json& j) { write_text_file(path, j.dump() + "\n"); }

// value column of a "summary" table in a JSON report
double summary_value(const nlohmann::json& doc, const std::string& quantity) {
  for (const auto& row : doc["tables"]["summary"]["rows"]) {
    if (row[0] == quantity) return row[1].get<double>();
  }
  FAIL("no summary row " << quantity);
  return 0.0;
}

}  // namespace

TEST_CASE("werner sweep output is reproducible") {
  const auto a = invoke({"werner-sweep", "--seed", "17"});
  const auto b = invoke({"werner-sweep", "--seed", "17"});
  CHECK(a.code == kSuccess);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# seed: 17") != std::string::npos);
  CHECK(a.out.find("# command_line: tdc werner-sweep --seed 17") != std::string::npos);
  CHECK(a.out.find("# table: sweep") != std::string::npos);
  CHECK(a.out.find("lambda,min_eig,closed_form,violated") != std::string::npos);

  const auto j = invoke({"werner-sweep", "--seed", "17", "--format", "json", "--step", "0.1"});
  REQUIRE(j.code == kSuccess);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["meta"]["seed"] == 17);
  CHECK(doc["meta"]["command"] == "werner-sweep");
  CHECK(doc["meta"]["version"].is_string());
  CHECK(doc["meta"]["tolerances"].contains("psd"));
  const auto& rows = doc["tables"]["sweep"]["rows"];
  CHECK(rows.size() == 21);
  const auto& cols = doc["tables"]["sweep"]["columns"];
  std::size_t violated_col = 0;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] == "violated") violated_col = c;
  }
  for (const auto& row : rows) {
    const double lambda = row[0].get<double>();
    CHECK(row[1].get<double>() == doctest::Approx(processed_werner_min_eig(lambda)).epsilon(1e-12));
    CHECK(row[violated_col].get<bool>() == (lambda < -3.0 / 7.0 - 1e-9));
  }
  const double root = doc["tables"]["threshold"]["rows"][0][2].get<double>();
  CHECK(std::abs(root + 3.0 / 7.0) < 1e-3);
}

TEST_CASE("fidelity identity report") {
  const auto r = invoke({"verify-lemma1", "--count", "20", "--format", "json"});
  REQUIRE(r.code == kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["tables"]["protocols"]["rows"].size() == 21);
  CHECK(doc["tables"]["protocols"]["rows"][0][1] == "standard-d2");
  CHECK(doc["tables"]["summary"]["rows"][0][1].get<double>() <= 1e-9);
}

TEST_CASE("synthesis round trip") {
  TempDir dir;
  const auto state = dir.file("werner.json");
  const auto channel = dir.file("fold.json");
  const auto protocol = dir.file("protocol.json");
  dump(state, state_to_json(werner_state(3, -1.0)));
  dump(channel, channel_to_json(qutrit_fold_channel()));

  const auto r = invoke({"synthesize", state, "--channel", channel, "--protocol", protocol,
                         "--format", "json"});
  REQUIRE(r.code == kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& row = doc["tables"]["synthesis"]["rows"][0];
  CHECK(row[0] == true);
  const double reported = row[10].get<double>();
  CHECK(reported > 0.5);
  const auto p = read_protocol(protocol);
  CHECK(std::abs(fidelity_via_discrimination(p).fidelity - reported) <= 1e-12);
  CHECK(std::abs(entanglement_fidelity(teleportation_channel(p)) - reported) <= 1e-9);

  SUBCASE("channel search path") {
    const auto s = invoke({"synthesize", state, "--dim-c", "2", "--restarts", "4"});
    CHECK(s.code == kSuccess);
  }
  SUBCASE("no violation") {
    const auto sep = dir.file("product.json");
    dump(sep, state_to_json(werner_state(3, 0.5)));
    const auto s = invoke({"synthesize", sep, "--dim-c", "2", "--restarts", "2"});
    CHECK(s.code == kNoViolation);
    CHECK(s.out.find("false") != std::string::npos);
  }
  SUBCASE("dense report of the synthesized protocol") {
    const auto d = invoke({"dense-report", protocol, "--format", "json"});
    REQUIRE(d.code == kSuccess);
    const auto dd = nlohmann::json::parse(d.out);
    CHECK(summary_value(dd, "fidelity") == doctest::Approx(reported).epsilon(1e-12));
    CHECK(summary_value(dd, "f_cl") > summary_value(dd, "classical_bound_dc"));
    CHECK(summary_value(dd, "duality_residual") <= 1e-9);
  }
}

TEST_CASE("dense report bounds") {
  TempDir dir;
  SUBCASE("standard protocol reaches two bits") {
    const auto path = dir.file("standard.json");
    dump(path, protocol_to_json(standard_protocol(2)));
    const auto r = invoke({"dense-report", path, "--format", "json"});
    REQUIRE(r.code == kSuccess);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(summary_value(doc, "info_upper") == doctest::Approx(2.0));
    CHECK(summary_value(doc, "info_lower") == doctest::Approx(2.0));
    CHECK(summary_value(doc, "info_upper_from_fidelity") == doctest::Approx(2.0));
    CHECK(doc["tables"]["transition"]["rows"].size() == 16);
    CHECK(summary_value(doc, "accessible_info_low") == doctest::Approx(2.0));
    CHECK(summary_value(doc, "accessible_info_high") == doctest::Approx(2.0));
  }
  SUBCASE("classical protocol is capped at log |C|") {
    const auto path = dir.file("classical.json");
    dump(path, protocol_to_json(classical_protocol(2, 3)));
    const auto r = invoke({"dense-report", path, "--format", "json"});
    REQUIRE(r.code == kSuccess);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(summary_value(doc, "info_upper") == doctest::Approx(std::log2(3.0)));
    CHECK(summary_value(doc, "fidelity") == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("seesaw command") {
  TempDir dir;
  const auto state = dir.file("phi.json");
  dump(state, state_to_json(max_entangled(2, "A", "B").density()));
  const auto out = dir.file("report.csv");
  const auto r = invoke({"seesaw", state, "--restarts", "2", "--max-iter", "30", "--out", out});
  REQUIRE(r.code == kSuccess);
  CHECK(r.out.empty());
  const auto text = slurp(out);
  CHECK(text.find("# table: summary") != std::string::npos);
  CHECK(text.find("# table: trace") != std::string::npos);
}

TEST_CASE("exit codes and tolerances") {
  TempDir dir;
  CHECK(invoke({}).code == kUsage);
  CHECK(invoke({"no-such-command"}).code == kUsage);
  CHECK(invoke({"werner-sweep", "--step", "abc"}).code == kUsage);
  CHECK(invoke({"werner-sweep", "--lambda-min", "-2"}).code == kUsage);

  SUBCASE("malformed files") {
    const auto bad = dir.file("bad.json");
    write_text_file(bad, "{\n \"type\": \"state\",\n \"dims\": [2, 2\n}\n");
    const auto r = invoke({"synthesize", bad});
    CHECK(r.code == kParseError);
    CHECK(r.err.find("bad.json:4:") != std::string::npos);

    const auto wrong = dir.file("wrong.json");
    write_text_file(wrong, R"({"type": "state", "dims": [2, 2], "matrix": [[[1, 0]]]})");
    const auto w = invoke({"synthesize", wrong});
    CHECK(w.code == kParseError);
    CHECK(w.err.find("/matrix") != std::string::npos);

    CHECK(invoke({"dense-report", dir.file("missing.json")}).code == kParseError);
  }
  SUBCASE("tolerance overrides are recorded and scoped") {
    const double before = tol().psd;
    const auto r = invoke({"werner-sweep", "--step", "0.5", "--tol", "psd=1e-6", "--format", "json"});
    REQUIRE(r.code == kSuccess);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["meta"]["tolerances"]["psd"].get<double>() == 1e-6);
    CHECK(tol().psd == before);
    CHECK(invoke({"werner-sweep", "--tol", "bogus=1"}).code == kUsage);
    CHECK(invoke({"werner-sweep", "--tol", "psd"}).code == kUsage);
  }
}
