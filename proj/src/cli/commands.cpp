#include "tdc/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "tdc/cli/io.hpp"
#include "tdc/dense.hpp"
#include "tdc/errors.hpp"
#include "tdc/optim.hpp"
#include "tdc/random.hpp"
#include "tdc/synth.hpp"
#include "tdc/tolerances.hpp"
#include "tdc/witness.hpp"

namespace tdc::cli {

namespace {

constexpr double kLemma1Tolerance = 1e-9;

Cell real(double x) { return x; }
Cell integer(long long x) { return x; }
Cell text(std::string s) { return s; }

DensityOp as_ab(const DensityOp& rho) {
  if (rho.dims().size() != 2) throw DimensionError("state must be bipartite");
  return DensityOp(SystemDims({label::A, label::B}, rho.dims().dims()), rho.matrix());
}

struct DenseFigures {
  int n;
  double classical_fidelity;
  double bound;
  bool non_classical;
  double p_opt;
  InfoBounds bounds;
};

DenseFigures dense_figures(const TeleportProtocol& p) {
  const double fcl = classical_correlation_fidelity(transition_matrix(p));
  const auto ens = decoded_ensemble(p);
  const double p_opt = optimal_discrimination(Ensemble::uniform(ens.states)).p_star;
  const double bound = classical_bound_dc(p.n(), p.dim_c());
  return {p.n(), fcl, bound, fcl > bound + 1e-12, p_opt,
          accessible_info_bounds(p.n(), p_opt, true)};
}

}  // namespace

CommandResult cmd_verify_lemma1(const Lemma1Args& a) {
  if (a.count < 1) throw DomainError("verify-lemma1: --count must be >= 1");
  if (a.max_dim < 1 || a.max_messages < 1) {
    throw DomainError("verify-lemma1: --max-dim and --max-messages must be >= 1");
  }
  CommandResult res;
  res.report.command = "verify-lemma1";
  res.report.seed = a.seed;
  Table& t = res.report.table("protocols", {"index", "kind", "dim_a", "dim_b", "dim_c", "n",
                                            "f_channel", "f_discrimination", "p_succ",
                                            "residual", "ok"});
  double worst = 0.0;
  auto add = [&](long long index, const std::string& kind, const TeleportProtocol& p) {
    const double f_channel = entanglement_fidelity(teleportation_channel(p));
    const auto disc = fidelity_via_discrimination(p);
    const double scale = static_cast<double>(p.n()) / (static_cast<double>(p.dim_c()) * p.dim_c());
    const double residual = std::abs(f_channel - scale * disc.p_succ);
    worst = std::max(worst, residual);
    t.add({integer(index), text(kind), integer(p.dim_a()), integer(p.dim_b()), integer(p.dim_c()),
           integer(p.n()), real(f_channel), real(disc.fidelity), real(disc.p_succ), real(residual),
           residual <= kLemma1Tolerance});
  };
  add(0, "standard-d2", standard_protocol(2));
  Rng rng(a.seed);
  for (int i = 0; i < a.count; ++i) {
    const int da = rng.uniform_int(1, a.max_dim);
    const int db = rng.uniform_int(1, a.max_dim);
    const int dc = rng.uniform_int(1, a.max_dim);
    const int n = rng.uniform_int(1, a.max_messages);
    add(i + 1, "random", random_protocol(rng, da, db, dc, n));
  }
  Table& s = res.report.table("summary", {"protocols", "max_residual", "tolerance", "all_ok"});
  s.add({integer(a.count + 1), real(worst), real(kLemma1Tolerance), worst <= kLemma1Tolerance});
  res.exit_code = worst <= kLemma1Tolerance ? kSuccess : kNumericalFailure;
  return res;
}

CommandResult cmd_werner_sweep(const SweepArgs& a) {
  if (!(a.lambda_min >= -1.0 && a.lambda_max <= 1.0 && a.lambda_min < a.lambda_max)) {
    throw DomainError("werner-sweep: need -1 <= lambda-min < lambda-max <= 1");
  }
  if (!(a.step > 0.0)) throw DomainError("werner-sweep: --step must be positive");
  CommandResult res;
  res.report.command = "werner-sweep";
  res.report.seed = a.seed;
  constexpr int dim_c = 2;
  Table& t = res.report.table(
      "sweep", {"lambda", "min_eig", "closed_form", "violated", "r", "n", "synth_fidelity",
                "classical_fidelity", "f_cl", "classical_bound_dc", "non_classical", "p_opt",
                "info_lower", "info_upper"});
  const Channel fold = qutrit_fold_channel();
  const long long steps =
      static_cast<long long>(std::floor((a.lambda_max - a.lambda_min) / a.step + 1e-9));
  std::vector<std::pair<double, double>> curve;
  for (long long k = 0; k <= steps; ++k) {
    const double lambda = std::min(a.lambda_max, a.lambda_min + static_cast<double>(k) * a.step);
    const double min_eig = processed_werner_min_eig(lambda);
    curve.emplace_back(lambda, min_eig);
    const DensityOp rho = werner_state(3, lambda);
    const auto report = reduction_check(apply_channel(fold, rho, label::B));
    std::vector<Cell> row{real(lambda), real(min_eig),
                          real(processed_werner_min_eig_closed_form(lambda)), report.violated};
    bool filled = false;
    if (report.violated) {
      try {
        const auto syn = synthesize({rho, fold, *report.witness, dim_c});
        const auto dense = dense_figures(syn.protocol);
        row.insert(row.end(),
                   {integer(syn.r), integer(syn.protocol.n()), real(syn.fidelity),
                    real(1.0 / dim_c), real(dense.classical_fidelity), real(dense.bound),
                    dense.non_classical, real(dense.p_opt), real(dense.bounds.lower),
                    real(dense.bounds.upper)});
        filled = true;
      } catch (const PreconditionError&) {
        // the violation is below the synthesis margin; leave the columns empty
      }
    }
    if (!filled) {
      row.insert(row.end(), {Cell{}, Cell{}, Cell{}, real(1.0 / dim_c), Cell{}, Cell{}, Cell{},
                             Cell{}, Cell{}, Cell{}});
    }
    t.add(std::move(row));
  }
  Table& th = res.report.table("threshold", {"lambda_left", "lambda_right", "interpolated_root",
                                             "closed_form_root"});
  const double closed_root = (18.0 - std::sqrt(18.0 * 18.0 + 4.0 * 7.0 * 9.0)) / 14.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const auto [l0, v0] = curve[i - 1];
    const auto [l1, v1] = curve[i];
    if ((v0 < 0.0) != (v1 < 0.0)) {
      const double root = l0 + (l1 - l0) * v0 / (v0 - v1);
      th.add({real(l0), real(l1), real(root), real(closed_root)});
    }
  }
  return res;
}

CommandResult cmd_synthesize(const SynthesizeArgs& a) {
  CommandResult res;
  res.report.command = "synthesize";
  res.report.seed = a.seed;
  Table& t = res.report.table(
      "synthesis", {"found", "source", "restart", "dim_a", "dim_b", "dim_c", "min_eigenvalue",
                    "witness_margin", "schmidt_rank", "n", "fidelity", "fidelity_channel",
                    "classical_fidelity", "margin", "protocol_file"});
  const DensityOp rho = as_ab(read_state(a.state_file));
  std::optional<Channel> channel;
  std::optional<ReductionReport> report;
  Cell restart;
  std::string source;
  int dim_c = a.dim_c.value_or(2);
  if (a.channel_file) {
    source = "file";
    channel = read_channel(*a.channel_file);
    if (!a.dim_c) dim_c = channel->dim_out();
    if (channel->dim_in() != rho.dims().dims()[1] || channel->dim_out() != dim_c) {
      throw DimensionError("synthesize: channel must map |B| to |C| = " + std::to_string(dim_c));
    }
    channel = Channel::from_kraus(SystemDims::single(label::B, channel->dim_in()),
                                  SystemDims::single(label::C, dim_c), channel->kraus());
    auto r = reduction_check(apply_channel(*channel, rho, label::B));
    if (r.violated) report = std::move(r);
  } else {
    source = "search";
    if (auto found = find_violating_channel(rho, dim_c, a.restarts, a.seed)) {
      channel = found->channel;
      report = found->report;
      restart = integer(found->restart);
    }
  }
  const int da = rho.dims().dims()[0];
  const int db = rho.dims().dims()[1];
  if (!report) {
    t.add({false, text(source), restart, integer(da), integer(db), integer(dim_c), Cell{}, Cell{},
           Cell{}, Cell{}, Cell{}, Cell{}, real(1.0 / dim_c), Cell{}, Cell{}});
    res.exit_code = kNoViolation;
    return res;
  }
  const SynthesisInput in{rho, *channel, *report->witness, dim_c};
  const SynthesisCheck check = check_synthesis_input(in);
  const SynthesizedProtocol syn = synthesize(in);
  const double f_channel = entanglement_fidelity(teleportation_channel(syn.protocol));
  Cell file;
  if (a.protocol_file) {
    write_text_file(*a.protocol_file, protocol_to_json(syn.protocol).dump(1) + "\n");
    file = text(*a.protocol_file);
  }
  t.add({true, text(source), restart, integer(da), integer(db), integer(dim_c),
         real(report->min_eigenvalue), real(check.margin), integer(check.schmidt_rank),
         integer(syn.protocol.n()), real(syn.fidelity), real(f_channel), real(1.0 / dim_c),
         real(syn.margin), file});
  return res;
}

CommandResult cmd_seesaw(const SeesawArgs& a) {
  CommandResult res;
  res.report.command = "seesaw";
  res.report.seed = a.seed;
  const DensityOp rho = as_ab(read_state(a.state_file));
  SeesawOptions opts;
  opts.restarts = a.restarts;
  opts.max_iter = a.max_iter;
  opts.seed = a.seed;
  const int n = a.messages.value_or(a.dim_c * a.dim_c);
  const SeesawResult ls = lambda_star(rho, a.dim_c, opts);
  const SeesawResult fid = maximize_teleportation_fidelity(rho, a.dim_c, n, opts);

  Table& s = res.report.table("summary", {"quantity", "value", "best_restart", "iterations",
                                          "converged", "classical_reference"});
  s.add({text("lambda_star"), real(ls.value), integer(static_cast<long long>(ls.best_restart)),
         integer(ls.iterations), ls.converged, real(1.0)});
  s.add({text("fidelity"), real(fid.value), integer(static_cast<long long>(fid.best_restart)),
         integer(fid.iterations), fid.converged, real(1.0 / a.dim_c)});
  Table& r = res.report.table(
      "restarts", {"quantity", "restart", "seed", "init", "value", "iterations", "converged"});
  Table& tr = res.report.table("trace", {"quantity", "restart", "iteration", "value"});
  for (const auto& [name, result] : {std::pair<std::string, const SeesawResult*>{"lambda_star", &ls},
                                     std::pair<std::string, const SeesawResult*>{"fidelity", &fid}}) {
    for (std::size_t i = 0; i < result->restarts.size(); ++i) {
      const auto& rec = result->restarts[i];
      r.add({text(name), integer(static_cast<long long>(i)),
             integer(static_cast<long long>(rec.seed)), text(rec.init), real(rec.value),
             integer(rec.iterations), rec.converged});
      for (std::size_t k = 0; k < rec.trace.size(); ++k) {
        tr.add({text(name), integer(static_cast<long long>(i)),
                integer(static_cast<long long>(k + 1)), real(rec.trace[k])});
      }
    }
  }
  return res;
}

CommandResult cmd_dense_report(const DenseArgs& a) {
  CommandResult res;
  res.report.command = "dense-report";
  const TeleportProtocol p = read_protocol(a.protocol_file);
  const DualityCheck dual = duality_check(p);
  const TransitionMatrix w = transition_matrix(p);
  const auto ens = Ensemble::uniform(decoded_ensemble(p).states);
  const auto povm = povm_on_ac(p);
  const DiscriminationResult opt = optimal_discrimination(ens);
  const double bound = classical_bound_dc(p.n(), p.dim_c());
  const InfoBounds eq_n = accessible_info_bounds(p.n(), opt.p_star, true);
  const bool protocol_optimal = dual.classical_fidelity >= opt.p_star - 1e-9;
  const InfoBounds eq_f = accessible_info_bounds_dF(p.dim_c(), dual.fidelity,
                                                    dual.classical_fidelity, p.n(),
                                                    protocol_optimal);
  Table& s = res.report.table("summary", {"quantity", "value"});
  s.add({text("n"), integer(p.n())});
  s.add({text("dim_c"), integer(p.dim_c())});
  s.add({text("fidelity"), real(dual.fidelity)});
  s.add({text("f_cl"), real(dual.classical_fidelity)});
  s.add({text("duality_residual"), real(dual.residual)});
  s.add({text("classical_bound_dc"), real(bound)});
  s.add({text("non_classical"), dual.classical_fidelity > bound + 1e-12});
  s.add({text("p_succ_optimal"), real(opt.p_star)});
  s.add({text("p_succ_dual_bound"), real(opt.dual_value)});
  const double info_protocol = accessible_info_of_measurement(ens, povm);
  const double info_optimal = accessible_info_of_measurement(ens, opt.povm);
  const double info_pgm = accessible_info_of_measurement(ens, pretty_good_measurement(ens));
  const double chi = holevo_chi(ens);
  s.add({text("info_protocol_measurement"), real(info_protocol)});
  s.add({text("info_optimal_measurement"), real(info_optimal)});
  s.add({text("info_pgm"), real(info_pgm)});
  s.add({text("holevo_chi"), real(chi)});
  s.add({text("info_lower"), real(eq_n.lower)});
  s.add({text("info_upper"), real(eq_n.upper)});
  s.add({text("info_lower_from_fidelity"), real(eq_f.lower)});
  s.add({text("info_upper_from_fidelity"), real(eq_f.upper)});
  s.add({text("protocol_measurement_optimal"), protocol_optimal});
  // accessible information lies in [best measured value, min(upper bound, chi)]
  s.add({text("accessible_info_low"), real(std::max({info_protocol, info_optimal, info_pgm}))});
  s.add({text("accessible_info_high"), real(std::min(eq_n.upper, chi))});
  Table& t = res.report.table("transition", {"i", "j", "p"});
  for (int i = 0; i < w.n(); ++i) {
    for (int j = 0; j < w.n(); ++j) t.add({integer(i), integer(j), real(w(i, j))});
  }
  return res;
}

namespace {

class ToleranceScope {
 public:
  ToleranceScope() : saved_(Tolerances::current()) {}
  ~ToleranceScope() { Tolerances::set_current(saved_); }
  ToleranceScope(const ToleranceScope&) = delete;
  ToleranceScope& operator=(const ToleranceScope&) = delete;

 private:
  Tolerances saved_;
};

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::vector<std::string> tol;
};

void add_common(CLI::App* sub, Common& c, bool seeded) {
  if (seeded) sub->add_option("--seed", c.seed, "RNG seed (recorded in the report)");
  sub->add_option("--out", c.out, "write the report here instead of stdout");
  sub->add_option("--format", c.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--tol", c.tol, "tolerance override key=value (repeatable)");
}

std::string usage_error(const std::string& s) { return "usage error: " + s; }

Tolerances parse_tolerances(const std::vector<std::string>& overrides) {
  Tolerances t = Tolerances::current();
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--tol", "expected key=value: " + o);
    const std::string key = o.substr(0, eq);
    const std::string value = o.substr(eq + 1);
    double v = 0.0;
    std::size_t used = 0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty() || !(v > 0.0)) {
      throw CLI::ValidationError("--tol", "value must be a positive number: " + o);
    }
    if (!t.set(key, v)) throw CLI::ValidationError("--tol", "unknown tolerance key: " + key);
  }
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Teleportation and dense-coding toolkit"};
  app.set_version_flag("--version", std::string(TDC_VERSION));
  app.require_subcommand(1);
  Common common;

  Lemma1Args lemma1;
  auto* c_lemma1 = app.add_subcommand("verify-lemma1", "check F = (N/|C|^2) p_succ on random protocols");
  c_lemma1->add_option("--count", lemma1.count, "number of random protocols");
  c_lemma1->add_option("--max-dim", lemma1.max_dim, "largest |A|, |B|, |C|");
  c_lemma1->add_option("--messages", lemma1.max_messages, "largest N");
  add_common(c_lemma1, common, true);

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("werner-sweep", "processed d = 3 Werner family");
  c_sweep->add_option("--lambda-min", sweep.lambda_min);
  c_sweep->add_option("--lambda-max", sweep.lambda_max);
  c_sweep->add_option("--step", sweep.step);
  add_common(c_sweep, common, true);

  SynthesizeArgs syn;
  int syn_dim_c = 0;
  std::string syn_channel;
  std::string syn_protocol;
  auto* c_syn = app.add_subcommand("synthesize", "build a protocol beating 1/|C| from a violation");
  c_syn->add_option("state", syn.state_file, "state file")->required();
  auto* o_channel = c_syn->add_option("--channel", syn_channel, "channel file B -> C");
  auto* o_dim_c = c_syn->add_option("--dim-c", syn_dim_c, "|C|")->check(CLI::PositiveNumber);
  c_syn->add_option("--restarts", syn.restarts, "see-saw restarts for the channel search")
      ->check(CLI::PositiveNumber);
  auto* o_protocol = c_syn->add_option("--protocol", syn_protocol, "write the protocol here");
  add_common(c_syn, common, true);

  SeesawArgs seesaw;
  int seesaw_messages = 0;
  auto* c_seesaw = app.add_subcommand("seesaw", "lower bounds on lambda* and the best fidelity");
  c_seesaw->add_option("state", seesaw.state_file, "state file")->required();
  c_seesaw->add_option("--dim-c", seesaw.dim_c, "|C|")->check(CLI::PositiveNumber);
  auto* o_messages =
      c_seesaw->add_option("--messages", seesaw_messages, "N (default |C|^2)")->check(CLI::PositiveNumber);
  c_seesaw->add_option("--restarts", seesaw.restarts)->check(CLI::PositiveNumber);
  c_seesaw->add_option("--max-iter", seesaw.max_iter)->check(CLI::PositiveNumber);
  add_common(c_seesaw, common, true);

  DenseArgs dense;
  auto* c_dense = app.add_subcommand("dense-report", "dense-coding figures of a protocol file");
  c_dense->add_option("protocol", dense.protocol_file, "protocol file")->required();
  add_common(c_dense, common, false);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  ToleranceScope scope;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    Tolerances::set_current(parse_tolerances(common.tol));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << TDC_VERSION << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << usage_error(e.what()) << "\n";
    return kUsage;
  }

  std::string command_line = "tdc";
  for (std::size_t i = 1; i < args.size(); ++i) command_line += " " + args[i];

  try {
    CommandResult res;
    if (*c_lemma1) {
      lemma1.seed = common.seed;
      res = cmd_verify_lemma1(lemma1);
    } else if (*c_sweep) {
      sweep.seed = common.seed;
      res = cmd_werner_sweep(sweep);
    } else if (*c_syn) {
      syn.seed = common.seed;
      if (*o_channel) syn.channel_file = syn_channel;
      if (*o_dim_c) syn.dim_c = syn_dim_c;
      if (*o_protocol) syn.protocol_file = syn_protocol;
      res = cmd_synthesize(syn);
    } else if (*c_seesaw) {
      seesaw.seed = common.seed;
      if (*o_messages) seesaw.messages = seesaw_messages;
      res = cmd_seesaw(seesaw);
    } else {
      res = cmd_dense_report(dense);
    }
    res.report.command_line = command_line;
    const Format format = common.format == "json" ? Format::json : Format::csv;
    if (common.out.empty()) {
      write_report(res.report, format, out);
    } else {
      std::ostringstream buf;
      write_report(res.report, format, buf);
      write_text_file(common.out, buf.str());
    }
    if (res.exit_code == kNoViolation) err << "no violation of the reduction criterion found\n";
    if (res.exit_code == kNumericalFailure) err << "numerical check failed\n";
    return res.exit_code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << usage_error(e.what()) << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace tdc::cli
