// framelab command-line front end.
//
// Exit codes: 0 success, 1 bad input or parameters, 2 analyze saw a
// non-frame, 3 bench cross-check mismatch, 4 suite failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "framelab/framelab.hpp"

namespace fl = framelab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotFrame = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitSuiteFailed = 4;

struct Globals {
  std::optional<double> rel_eq;
  std::optional<double> rank_rel;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  bool format_given = false;

  fl::TolerancePolicy tolerance() const {
    fl::TolerancePolicy tol;
    if (rel_eq) tol.rel_eq = *rel_eq;
    if (rank_rel) tol.rank_rel = *rank_rel;
    tol.validate();
    return tol;
  }
};

std::string read_source(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fl::Error(fl::ErrorKind::ParseError, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw fl::Error(fl::ErrorKind::InvalidArgument, "cannot write '" + g.out + "'");
  out << text;
}

void require_json(const Globals& g, const char* command) {
  if (g.format != "json") {
    throw fl::Error(fl::ErrorKind::InvalidArgument, std::string(command) + " only writes JSON");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw fl::Error(fl::ErrorKind::ParseError, "not a number: '" + s + "'");
  return v;
}

// box | gauss[:sigma] | pc:c0,c1,... | rand:seed | inline JSON array | @file.
fl::CVector parse_window(const std::string& spec, fl::Index length, fl::Index a, fl::Index b,
                         const fl::TolerancePolicy& tol) {
  fl::CVector g;
  if (!spec.empty() && (spec.front() == '[' || spec.front() == '@')) {
    const std::string text = spec.front() == '@' ? read_source(spec.substr(1)) : spec;
    g = fl::vector_from_json(fl::parse_json(text));
  } else {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    fl::WindowParams params;
    if (kind == "box") {
      g = fl::window_library(fl::WindowKind::Box, length, a, b, params, tol);
    } else if (kind == "gauss") {
      if (!arg.empty()) params.sigma = parse_double(arg);
      g = fl::window_library(fl::WindowKind::PeriodizedGaussian, length, a, b, params, tol);
    } else if (kind == "pc") {
      for (const std::string& c : split(arg, ',')) params.coefficients.emplace_back(parse_double(c), 0.0);
      g = fl::window_library(fl::WindowKind::ShiftOrthogonalPc, length, a, b, params, tol);
    } else if (kind == "rand") {
      params.seed = arg.empty() ? 0 : static_cast<std::uint64_t>(std::stoull(arg));
      g = fl::window_library(fl::WindowKind::RandomComplex, length, a, b, params, tol);
    } else {
      throw fl::Error(fl::ErrorKind::ParseError, "unknown window spec '" + spec + "'");
    }
  }
  if (g.size() != length) throw fl::Error(fl::ErrorKind::ShapeMismatch, "window length differs from L");
  return g;
}

std::string csv_real(double v) {
  std::ostringstream os;
  os.precision(17);
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  os << v;
  return os.str();
}

// ---------------------------------------------------------------- commands

int cmd_analyze(const Globals& g, const std::string& path) {
  require_json(g, "analyze");
  const fl::Json doc = fl::parse_json(read_source(path));
  const fl::CMatrix synth = fl::synthesis_from_json(doc);
  if (synth.cols() == 0 || synth.rows() == 0) {
    fl::Json out{{"d", synth.rows()}, {"n", synth.cols()}, {"diagnostics", fl::Json{{"is_frame", false}}}};
    emit(g, fl::dump_json(out));
    return kExitNotFrame;
  }
  const fl::Frame fr(synth, g.tolerance());
  const fl::Json report = fl::analyze_report(fr);
  emit(g, fl::dump_json(report));
  return report["diagnostics"]["is_frame"].get<bool>() ? kExitOk : kExitNotFrame;
}

struct LatticeArgs {
  fl::Index length = 0;
  fl::Index a = 0;
  fl::Index b = 0;
  std::string window = "gauss";
  std::string input;
};

fl::GaborSystem lattice_system(const Globals& g, const LatticeArgs& la) {
  if (!la.input.empty()) return fl::gabor_from_json(fl::parse_json(read_source(la.input)));
  if (la.length < 1 || la.a < 1 || la.b < 1 || la.length % la.a != 0 || la.length % la.b != 0) {
    throw fl::Error(fl::ErrorKind::BadDivisor, "need L >= 1 with a | L and b | L");
  }
  return fl::GaborSystem(parse_window(la.window, la.length, la.a, la.b, g.tolerance()), la.a, la.b);
}

int cmd_gabor(const Globals& g, const LatticeArgs& la) {
  require_json(g, "gabor");
  const fl::GaborSystem sys = lattice_system(g, la);
  emit(g, fl::dump_json(fl::gabor_report(sys, g.tolerance())));
  return kExitOk;
}

int cmd_zak(const Globals& g, const LatticeArgs& la, bool normalized) {
  require_json(g, "zak");
  LatticeArgs args = la;
  if (args.input.empty() && args.b == 0 && args.a > 0) args.b = args.length / args.a;
  const fl::GaborSystem sys = lattice_system(g, args);
  const fl::ZakArray z = fl::zak_forward(sys.window(), sys.a());
  fl::Json out{{"zak", fl::zak_json(z, normalized)}};
  if (sys.is_critical()) {
    out["critical_spectrum"] = fl::real_vector_json(fl::critical_spectrum(sys));
  }
  emit(g, fl::dump_json(out));
  return kExitOk;
}

int cmd_translates(const Globals& g, fl::Index length, const std::vector<fl::Index>& steps,
                   const std::string& phi_spec) {
  const fl::TolerancePolicy tol = g.tolerance();
  std::vector<fl::Index> bs = steps;
  if (bs.empty()) bs = fl::divisors(length);
  const fl::CVector phi = parse_window(phi_spec, length, 1, 1, tol);
  fl::Json rows = fl::Json::array();
  std::ostringstream csv;
  csv << "L,b,verdict,A,B\n";
  for (fl::Index b : bs) {
    const fl::TranslateSystem ts(phi, b, tol);
    const fl::TranslateClassification cls = fl::classify_translates(ts);
    rows.push_back(fl::translates_json(ts, cls));
    csv << length << ',' << b << ',' << fl::to_string(cls.verdict) << ',' << csv_real(cls.lower) << ','
        << csv_real(cls.upper) << '\n';
  }
  emit(g, g.format == "csv" ? csv.str() : fl::dump_json(rows));
  return kExitOk;
}

int cmd_perturb(const Globals& g, const std::string& f_path, const std::string& g_path, double lambda1,
                double lambda2, double mu, int restarts) {
  require_json(g, "perturb");
  const fl::TolerancePolicy tol = g.tolerance();
  const fl::Frame f = fl::frame_from_json(fl::parse_json(read_source(f_path)), tol);
  const fl::Frame h = fl::frame_from_json(fl::parse_json(read_source(g_path)), tol);
  fl::MixedTestOptions opts;
  opts.seed = g.seed;
  opts.restarts = restarts;
  emit(g, fl::dump_json(fl::perturbation_json(fl::perturbation_report(f, h, lambda1, lambda2, mu, opts))));
  return kExitOk;
}

fl::Frame projection_frame(const Globals& g, const std::string& path, const std::string& staircase) {
  const fl::TolerancePolicy tol = g.tolerance();
  if (!staircase.empty()) {
    const auto colon = staircase.find(':');
    const std::string kind = staircase.substr(0, colon);
    const fl::Index depth = colon == std::string::npos ? 4 : std::stol(staircase.substr(colon + 1));
    if (kind == "repeat") return fl::staircase_frame(fl::StaircaseKind::RepeatStaircase, depth, tol);
    if (kind == "block41") return fl::staircase_frame(fl::StaircaseKind::Block41, depth, tol);
    throw fl::Error(fl::ErrorKind::ParseError, "unknown staircase '" + staircase + "'");
  }
  if (path.empty()) throw fl::Error(fl::ErrorKind::InvalidArgument, "give a frame file or --staircase");
  return fl::frame_from_json(fl::parse_json(read_source(path)), tol);
}

int cmd_projmethod(const Globals& g, const std::string& path, const std::string& staircase,
                   const std::string& sets_path, int probe_count) {
  require_json(g, "projmethod");
  const fl::Frame fr = projection_frame(g, path, staircase);
  fl::IndexSets sets = fl::prefix_sections(fr.size());
  if (!sets_path.empty()) {
    sets.clear();
    const fl::Json doc = fl::parse_json(read_source(sets_path));
    try {
      for (const auto& s : doc) sets.push_back(s.get<std::vector<fl::Index>>());
    } catch (const nlohmann::json::exception& e) {
      throw fl::Error(fl::ErrorKind::ParseError, e.what());
    }
  }
  fl::Rng rng(g.seed, 0);
  std::vector<fl::CVector> probes;
  for (int i = 0; i < probe_count; ++i) probes.push_back(rng.complex_vector(fr.dim()));
  fl::Json out{{"trace", fl::trace_json(fl::finite_sections(fr, sets, probes))},
               {"conditional_riesz", fl::conditional_riesz_json(fl::conditional_riesz_report(fr, sets))}};
  emit(g, fl::dump_json(out));
  return kExitOk;
}

int cmd_scan(const Globals& g, fl::Index length, const std::string& window) {
  const fl::TolerancePolicy tol = g.tolerance();
  const fl::CVector w = parse_window(window, length, 1, 1, tol);
  const std::vector<fl::ScanRow> rows = fl::param_scan(w, tol);
  if (g.format == "csv") {
    std::ostringstream csv;
    csv << "L,a,b,redundancy,is_frame,lower,upper\n";
    for (const fl::ScanRow& r : rows) {
      csv << length << ',' << r.a << ',' << r.b << ',' << csv_real(r.redundancy) << ','
          << (r.is_frame ? "true" : "false") << ',' << csv_real(r.lower) << ',' << csv_real(r.upper) << '\n';
    }
    emit(g, csv.str());
  } else {
    emit(g, fl::dump_json(fl::scan_json(length, rows)));
  }
  return kExitOk;
}

template <typename Fn>
double median_ns(int reps, Fn&& fn) {
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  return samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

int cmd_bench(const Globals& g, const std::vector<fl::Index>& lengths, fl::Index a, fl::Index b, int reps) {
  if (reps < 1) throw fl::Error(fl::ErrorKind::InvalidArgument, "reps must be positive");
  bool mismatch = false;
  std::ostringstream csv;
  csv << "L,direct_apply_ns,walnut_apply_ns,speedup,max_rel_deviation,ok\n";
  fl::Json rows = fl::Json::array();
  for (fl::Index length : lengths) {
    const fl::Index aa = std::min(a, length);
    const fl::Index bb = std::min(b, length);
    if (length % aa != 0 || length % bb != 0) {
      throw fl::Error(fl::ErrorKind::BadDivisor, "a and b must divide every L");
    }
    fl::Rng rng(g.seed, static_cast<std::uint64_t>(length));
    const fl::GaborSystem sys(rng.complex_vector(length), aa, bb);
    const fl::CVector f = rng.complex_vector(length);
    const fl::CorrelationTable table = fl::correlation_table(sys);
    fl::CVector direct;
    fl::CVector fast;
    const double direct_ns = median_ns(reps, [&] { direct = fl::direct_apply(sys, f); });
    const double walnut_ns = median_ns(reps, [&] { fast = fl::walnut_apply(table, f); });
    const double dev = (fast - direct).norm() / std::max(1e-300, direct.norm());
    const bool ok = dev <= g.tolerance().rel_eq;
    mismatch = mismatch || !ok;
    const double speedup = direct_ns / std::max(walnut_ns, 1.0);
    csv << length << ',' << csv_real(direct_ns) << ',' << csv_real(walnut_ns) << ',' << csv_real(speedup) << ','
        << csv_real(dev) << ',' << (ok ? "true" : "false") << '\n';
    rows.push_back(fl::Json{{"L", length}, {"direct_apply_ns", direct_ns}, {"walnut_apply_ns", walnut_ns},
                            {"speedup", speedup}, {"max_rel_deviation", dev}, {"ok", ok}});
  }
  const bool as_json = g.format_given && g.format == "json";
  emit(g, as_json ? fl::dump_json(rows) : csv.str());
  return mismatch ? kExitMismatch : kExitOk;
}

int cmd_suite(const Globals& g, bool list, const std::vector<std::string>& only) {
  require_json(g, "suite");
  if (list) {
    std::ostringstream names;
    for (const fl::SuiteCheck& c : fl::suite_checks()) names << c.name << '\n';
    emit(g, names.str());
    return kExitOk;
  }
  fl::SuiteContext ctx{g.seed, g.tolerance()};
  const fl::Json report = fl::run_suite(ctx, only);
  emit(g, fl::dump_json(report));
  return fl::suite_passed(report) ? kExitOk : kExitSuiteFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framelab: finite frame and discrete Gabor diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.rel_eq, "Relative equality tolerance")->check(CLI::PositiveNumber);
  app.add_option("--rank-tol", g.rank_rel, "Relative singular-value cutoff")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for every random stream");
  app.add_option("--out", g.out, "Output file (default standard output)");
  auto* format_opt =
      app.add_option("--format", g.format, "Output format (bench defaults to csv)")->check(CLI::IsMember({"json", "csv"}));

  std::string analyze_path = "-";
  auto* analyze = app.add_subcommand("analyze", "Frame diagnostics for a frame JSON file");
  analyze->add_option("file", analyze_path, "Frame JSON ('-' for standard input)");

  LatticeArgs gabor_args;
  auto* gabor = app.add_subcommand("gabor", "Gabor system report");
  auto add_lattice = [](CLI::App* cmd, LatticeArgs& la, bool need_b) {
    cmd->add_option("-L,--length", la.length, "Signal length L");
    cmd->add_option("-a", la.a, "Time step a (divides L)");
    auto* bopt = cmd->add_option("-b", la.b, "Frequency step b (divides L)");
    if (!need_b) bopt->description("Frequency step b (default L / a)");
    cmd->add_option("-w,--window", la.window, "box | gauss[:sigma] | pc:c0,c1,... | rand:seed | JSON | @file");
    cmd->add_option("-i,--input", la.input, "Gabor system JSON {L, a, b, window}");
  };
  add_lattice(gabor, gabor_args, true);

  LatticeArgs zak_args;
  bool zak_normalized = false;
  auto* zak = app.add_subcommand("zak", "Zak transform and, at critical density, the frame spectrum");
  add_lattice(zak, zak_args, false);
  zak->add_flag("--normalized", zak_normalized, "Store rows scaled by 1/sqrt(N)");

  fl::Index tr_length = 0;
  std::vector<fl::Index> tr_steps;
  std::string tr_phi = "gauss";
  auto* translates = app.add_subcommand("translates", "Classify translate systems of one generator");
  translates->add_option("-L,--length", tr_length, "Signal length L")->required();
  translates->add_option("-b", tr_steps, "Translation steps (default: all divisors of L)")->delimiter(',');
  translates->add_option("--phi", tr_phi, "Generator spec (same forms as windows)");

  std::string pf_path;
  std::string pg_path;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double mu = 0.0;
  int restarts = 20;
  auto* perturb = app.add_subcommand("perturb", "Perturbation tests between two frames");
  perturb->add_option("reference", pf_path, "Reference frame JSON")->required();
  perturb->add_option("perturbed", pg_path, "Perturbed frame JSON")->required();
  perturb->add_option("--lambda1", lambda1, "Coefficient on the reference energy")->check(CLI::NonNegativeNumber);
  perturb->add_option("--lambda2", lambda2, "Coefficient on the perturbed energy")->check(CLI::NonNegativeNumber);
  perturb->add_option("--mu", mu, "Coefficient on the norm term")->check(CLI::NonNegativeNumber);
  perturb->add_option("--restarts", restarts, "Random restarts for sphere ascent")->check(CLI::PositiveNumber);

  std::string pm_path;
  std::string pm_staircase;
  std::string pm_sets;
  int pm_probes = 3;
  auto* projmethod = app.add_subcommand("projmethod", "Finite-section projection method trace");
  projmethod->add_option("file", pm_path, "Frame JSON");
  projmethod->add_option("--staircase", pm_staircase, "repeat:depth | block41:depth instead of a file");
  projmethod->add_option("--sets", pm_sets, "JSON file with nested index sets (default prefixes)");
  projmethod->add_option("--probes", pm_probes, "Number of random probe vectors")->check(CLI::NonNegativeNumber);

  fl::Index scan_length = 0;
  std::string scan_window = "gauss";
  auto* scan = app.add_subcommand("scan", "Frame bounds over every divisor lattice");
  scan->add_option("-L,--length", scan_length, "Signal length L")->required();
  scan->add_option("-w,--window", scan_window, "Window spec");

  std::vector<fl::Index> bench_lengths{256, 1024, 4096};
  fl::Index bench_a = 64;
  fl::Index bench_b = 64;
  int bench_reps = 50;
  auto* bench = app.add_subcommand("bench", "Time Walnut against direct frame-operator application");
  bench->add_option("-L,--lengths", bench_lengths, "Signal lengths")->delimiter(',');
  bench->add_option("-a", bench_a, "Time step (clamped to L)");
  bench->add_option("-b", bench_b, "Frequency step (clamped to L)");
  bench->add_option("--reps", bench_reps, "Repetitions per timing (median reported)");

  bool suite_list = false;
  std::vector<std::string> suite_only;
  auto* suite = app.add_subcommand("suite", "Run the invariant suite");
  suite->add_flag("--list", suite_list, "Print check names only");
  suite->add_option("--only", suite_only, "Run only these checks")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  g.format_given = format_opt->count() > 0;
  try {
    if (*analyze) return cmd_analyze(g, analyze_path);
    if (*gabor) return cmd_gabor(g, gabor_args);
    if (*zak) return cmd_zak(g, zak_args, zak_normalized);
    if (*translates) return cmd_translates(g, tr_length, tr_steps, tr_phi);
    if (*perturb) return cmd_perturb(g, pf_path, pg_path, lambda1, lambda2, mu, restarts);
    if (*projmethod) return cmd_projmethod(g, pm_path, pm_staircase, pm_sets, pm_probes);
    if (*scan) return cmd_scan(g, scan_length, scan_window);
    if (*bench) return cmd_bench(g, bench_lengths, bench_a, bench_b, bench_reps);
    if (*suite) return cmd_suite(g, suite_list, suite_only);
  } catch (const std::exception& e) {
    std::cerr << "framelab: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
