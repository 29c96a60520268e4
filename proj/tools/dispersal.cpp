// dispersal: command-line front end for the Disk Dispersal library.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dispersal/generators.hpp"
#include "dispersal/kernel.hpp"
#include "dispersal/render.hpp"
#include "dispersal/solver.hpp"

using namespace dispersal;

namespace {

constexpr int kUsage = 64;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  write_text_file(path, text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Variant variant_of(const std::string& s) {
  if (s == "euclidean") return Variant::euclidean;
  if (s == "rectilinear") return Variant::rectilinear;
  throw std::runtime_error("unknown variant '" + s + "'");
}

std::string comment_block(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& l : lines) out += "# " + l + "\n";
  return out;
}

int exit_for(Answer::Verdict v) {
  switch (v) {
    case Answer::Verdict::yes:
      return 0;
    case Answer::Verdict::no:
      return 1;
    default:
      return 2;
  }
}

std::vector<long long> int_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) out.push_back(std::stoll(item));
  return out;
}

// --- solve / oracle --------------------------------------------------------------

struct SolveArgs {
  std::string instance, witness, delta = "1/16";
  double time_budget = 120;
  long long max_set = -1;
  unsigned jobs = 1;
  long precision_cap = 0;
  bool oracle = false, verbose = false;
};

int run_solve(const SolveArgs& a) {
  Instance inst = read_instance_file(a.instance);
  Answer ans;
  if (a.oracle) {
    try {
      ans = oracle(inst, parse_rational(a.delta));
    } catch (const OracleGuardError& e) {
      std::cerr << "oracle: " << e.what() << "\n";
      return 2;
    }
  } else {
    SolverConfig cfg;
    cfg.delta = parse_rational(a.delta);
    cfg.time_budget = a.time_budget;
    cfg.max_candidate_set_size = a.max_set;
    cfg.jobs = a.jobs;
    cfg.precision_cap = a.precision_cap;
    ans = solve(inst, cfg);
  }
  std::cout << verdict_name(ans.verdict);
  if (!ans.reason.empty()) std::cout << " (" << ans.reason << ")";
  std::cout << "\nsets tried: " << ans.sets_tried << "\n";
  if (a.verbose)
    for (const std::string& l : ans.log) std::cout << "# " << l << "\n";
  if (ans.verdict == Answer::Verdict::yes && !a.witness.empty()) emit(a.witness, write_witness(ans.witness));
  return exit_for(ans.verdict);
}

// --- kernelize ---------------------------------------------------------------------

struct KernelArgs {
  std::string instance, output;
  bool shrink = false;
  std::size_t max_disks = 1000000;
};

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s.empty() ? "-" : s;
}

int run_kernelize(const KernelArgs& a) {
  Instance inst = read_instance_file(a.instance);
  if (!inst.blocks.empty()) {
    std::size_t total = inst.disks.size();
    for (const LatticeBlock& b : inst.blocks) total += static_cast<std::size_t>(b.columns() * b.rows());
    if (total > a.max_disks) {
      std::cerr << "kernelize: lattice blocks expand to more than " << a.max_disks << " disks\n";
      return 2;
    }
    inst = materialize_blocks(inst);
  }
  KernelResult kr = a.shrink ? full_kernel(inst) : kernelize(inst);
  const KernelReport& r = kr.report;
  std::vector<std::string> lines;
  if (kr.trivially_no) lines.push_back("trivially no: maximal matching exceeds k");
  lines.push_back("cover: " + join(r.cover));
  lines.push_back("d: " + to_string(r.d) + (r.d_exact ? " (exact)" : " (upper bound)"));
  lines.push_back("threshold: " + to_string(r.threshold));
  lines.push_back("kept: " + std::to_string(r.kept.size()) + " of " + std::to_string(inst.disks.size()));
  lines.push_back("kept indices: " + join(r.kept));
  lines.push_back("size bound: " + r.size_bound.get_str());
  if (a.shrink) {
    lines.push_back("parts: " + std::to_string(r.parts));
    lines.push_back("m: " + to_string(r.m));
    lines.push_back("r: " + to_string(r.r));
    lines.push_back("coordinate N: " + r.coordinate_n.get_str());
  }
  emit(a.output, write_instance(kr.instance) + comment_block(lines));
  return 0;
}

// --- validate ------------------------------------------------------------------------

int run_validate(const std::string& ipath, const std::string& wpath, bool tolerant, const std::string& eps) {
  Instance inst;
  Witness w;
  try {
    inst = read_instance_file(ipath);
    w = read_witness_file(wpath);
  } catch (const std::exception& e) {
    std::cout << "error(" << e.what() << ")\n";
    return 2;
  }
  ValidationMode mode = ValidationMode::exact();
  if (tolerant) mode = ValidationMode::tolerance(eps.empty() ? default_tolerance() : parse_rational(eps));
  ValidationResult r = validate_witness(inst, w, mode);
  std::cout << r.describe(mode) << "\n";
  switch (r.verdict) {
    case ValidationResult::Verdict::accept:
      return 0;
    case ValidationResult::Verdict::reject:
      return 1;
    default:
      return 2;
  }
}

// --- graph ------------------------------------------------------------------------------

int run_graph(const std::string& ipath, const std::string& out, bool comps) {
  Instance inst = read_instance_file(ipath);
  IntersectionGraph g;
  try {
    g = build_graph(std::span<const Disk>(inst.disks));
  } catch (const IndeterminateError& e) {
    std::cerr << "graph: " << e.what() << "\n";
    return 2;
  }
  std::ostringstream s;
  s << "# vertices " << g.vertices << " edges " << g.edges.size() << "\n";
  for (auto [u, v] : g.edges) s << u << " " << v << "\n";
  if (comps)
    for (const auto& c : components(g)) s << "# component " << join(c) << "\n";
  emit(out, s.str());
  return 0;
}

// --- generate ----------------------------------------------------------------------------

AppendingInstance appending_from_file(const std::string& path, long long a, long long kappa) {
  Instance inst = read_instance_file(path);
  AppendingInstance ai;
  ai.a = a;
  ai.kappa = kappa;
  ai.packing = inst.disks;
  const Rational side = Rational(static_cast<long>(a));
  for (const Disk& d : ai.packing)
    if (!is_rational(d.center) || sgn(*d.center.x.rational()) < 0 || sgn(*d.center.y.rational()) < 0 ||
        *d.center.x.rational() > side || *d.center.y.rational() > side)
      throw std::runtime_error(path + ": disk outside [0,a]^2 or not rational");
  if (is_packing(std::span<const Disk>(ai.packing)).status != PackingCheck::Status::ok)
    throw std::runtime_error(path + ": not a packing");
  return ai;
}

std::vector<std::string> claim_lines(const ClaimFourReport& r) {
  auto ok = [](bool b) { return b ? std::string("ok") : std::string("FAILED"); };
  return {"d: " + to_string(r.d),
          "s: " + to_string(r.s),
          "h: " + to_string(r.h),
          "l1^2: " + to_string(r.l1_sq) + " <= d^2 " + ok(r.l1_ok),
          "l2^2: " + to_string(r.l2_sq) + " > d^2 " + ok(r.l2_ok),
          "l3^2: " + to_string(r.l3_sq) + " <= d^2 " + ok(r.l3_ok),
          "l4^2: " + to_string(r.l4_sq) + " > d^2 " + ok(r.l4_ok)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disk Dispersal: solve, kernelize, validate, generate and render instances"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance; exit 0 yes, 1 no, 2 unknown");
  solve_cmd->add_option("instance", sa.instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--delta", sa.delta, "Finest refutation grid step (rational)");
  solve_cmd->add_option("--time-budget", sa.time_budget, "Seconds; 0 for unlimited");
  solve_cmd->add_option("--witness", sa.witness, "Write the witness here on yes");
  solve_cmd->add_flag("--oracle", sa.oracle, "Run the brute-force oracle instead");
  solve_cmd->add_option("--max-set-size", sa.max_set, "Largest candidate set tried");
  solve_cmd->add_option("--jobs", sa.jobs, "Worker threads")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--precision-cap", sa.precision_cap, "Interval precision cap in bits");
  solve_cmd->add_flag("-v,--verbose", sa.verbose, "Print the search log");

  SolveArgs oa;
  oa.oracle = true;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force grid oracle (<= 12 disks, k <= 3)");
  oracle_cmd->add_option("instance", oa.instance, "Instance file")->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--delta", oa.delta, "Grid step (rational)");
  oracle_cmd->add_option("--witness", oa.witness, "Write the witness here on yes");

  KernelArgs ka;
  auto* kernel_cmd = app.add_subcommand("kernelize", "Reduce an instance to its kernel");
  kernel_cmd->add_option("instance", ka.instance, "Instance file")->required()->check(CLI::ExistingFile);
  kernel_cmd->add_option("-o,--output", ka.output, "Output instance (default stdout)");
  kernel_cmd->add_flag("--shrink", ka.shrink, "Also partition and shrink coordinates");
  kernel_cmd->add_option("--max-disks", ka.max_disks, "Refuse to expand lattice blocks beyond this many disks");

  std::string v_inst, v_wit, v_eps;
  bool v_tol = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check a witness; exit 0 accept, 1 reject, 2 otherwise");
  validate_cmd->add_option("instance", v_inst, "Instance file")->required();
  validate_cmd->add_option("witness", v_wit, "Witness file")->required();
  validate_cmd->add_flag("--tolerant", v_tol, "Compare nominal values with a tolerance");
  validate_cmd->add_option("--eps", v_eps, "Tolerance for --tolerant (default 1/1000000000)");

  std::string r_inst, r_wit, r_out, r_scale = "10";
  bool r_nomoves = false;
  auto* render_cmd = app.add_subcommand("render", "Draw an instance, optionally with a witness, as SVG");
  render_cmd->add_option("instance", r_inst, "Instance file")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--witness", r_wit, "Witness file");
  render_cmd->add_option("-o,--output", r_out, "SVG file (default stdout)");
  render_cmd->add_option("--scale", r_scale, "Pixels per unit");
  render_cmd->add_flag("--no-moves", r_nomoves, "Ignore the witness moves");

  std::string g_inst, g_out;
  bool g_comps = false;
  auto* graph_cmd = app.add_subcommand("graph", "Print the intersection graph as an edge list");
  graph_cmd->add_option("instance", g_inst, "Instance file")->required()->check(CLI::ExistingFile);
  graph_cmd->add_option("-o,--output", g_out, "Output file (default stdout)");
  graph_cmd->add_flag("--components", g_comps, "Also list connected components");

  auto* gen = app.add_subcommand("generate", "Build instances");
  gen->require_subcommand(1);
  std::string out, variant = "euclidean", d2 = "1";
  long long k = 1;

  std::size_t rn = 10;
  std::string side = "10";
  std::uint64_t seed = 1;
  auto* g_random = gen->add_subcommand("random", "Random disks on the 1/4-grid");
  g_random->add_option("--n", rn, "Number of disks");
  g_random->add_option("--side", side, "Box side");
  g_random->add_option("--seed", seed, "Random seed");

  std::size_t cm = 3;
  auto* g_coloc = gen->add_subcommand("colocated", "m disks at the origin");
  g_coloc->add_option("--m", cm, "Number of disks");

  for (CLI::App* c : {g_random, g_coloc}) {
    c->add_option("--k", k, "Budget");
    c->add_option("--d2", d2, "Squared move distance");
    c->add_option("--variant", variant, "euclidean or rectilinear");
    c->add_option("-o,--output", out, "Output file (default stdout)");
  }

  long long side_a = 216, kappa = 1;
  std::string interior;
  auto* g_app = gen->add_subcommand("appending", "Disk Appending frame as an instance file (k = kappa)");
  g_app->add_option("--a", side_a, "Even side of the square");
  g_app->add_option("--kappa", kappa, "Disks to append");
  g_app->add_option("--interior", interior, "Instance file whose disks go inside the frame");
  g_app->add_option("-o,--output", out, "Output file (default stdout)");

  std::vector<std::string> sources;
  auto* g_cross = gen->add_subcommand("crosscompose", "OR-composition of an odd number of appending instances");
  g_cross->add_option("--a", side_a, "Shared side")->required();
  g_cross->add_option("--kappa", kappa, "Shared kappa")->required();
  g_cross->add_option("sources", sources, "Appending instance files")->required();
  g_cross->add_option("-o,--output", out, "Output file (default stdout)");

  std::string gt_file;
  auto* g_grid = gen->add_subcommand("gridtiling", "Grid Tiling reduction to a rectilinear instance");
  g_grid->add_option("tiling", gt_file, "Grid Tiling file")->required()->check(CLI::ExistingFile);
  g_grid->add_option("-o,--output", out, "Output file (default stdout)");

  std::string rows, cols;
  auto* g_gw = gen->add_subcommand("gridtiling-witness", "Witness for a Grid Tiling solution");
  g_gw->add_option("tiling", gt_file, "Grid Tiling file")->required()->check(CLI::ExistingFile);
  g_gw->add_option("--rows", rows, "Row values r*_1,...,r*_kappa")->required();
  g_gw->add_option("--cols", cols, "Column values c*_1,...,c*_kappa")->required();
  g_gw->add_option("-o,--output", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(sa);
    if (*oracle_cmd) return run_solve(oa);
    if (*kernel_cmd) return run_kernelize(ka);
    if (*validate_cmd) return run_validate(v_inst, v_wit, v_tol, v_eps);
    if (*graph_cmd) return run_graph(g_inst, g_out, g_comps);
    if (*render_cmd) {
      Instance inst = read_instance_file(r_inst);
      std::optional<Witness> w;
      if (!r_wit.empty()) w = read_witness_file(r_wit);
      RenderOptions opts;
      opts.scale = parse_rational(r_scale);
      opts.show_moves = !r_nomoves;
      emit(r_out, render_svg(inst, w, opts));
      return 0;
    }
    if (*g_random) {
      emit(out, write_instance(gen_random(rn, parse_rational(side), seed, k, parse_rational(d2), variant_of(variant))));
      return 0;
    }
    if (*g_coloc) {
      emit(out, write_instance(gen_colocated(cm, k, parse_rational(d2), variant_of(variant))));
      return 0;
    }
    if (*g_app) {
      std::vector<Disk> inner;
      if (!interior.empty()) inner = read_instance_file(interior).disks;
      AppendingInstance ai = gen_appending_frame(side_a, kappa, inner);
      Instance inst;
      inst.k = ai.kappa;
      inst.disks = ai.packing;
      emit(out, write_instance(inst) + comment_block({"appending a=" + std::to_string(ai.a) + " kappa=" +
                                                      std::to_string(ai.kappa) + " frame=" + std::to_string(ai.border)}));
      return 0;
    }
    if (*g_cross) {
      std::vector<AppendingInstance> in;
      for (const std::string& f : sources) in.push_back(appending_from_file(f, side_a, kappa));
      Composition c = gen_crosscompose(in);
      std::vector<std::string> lines = claim_lines(c.report);
      lines.push_back("stack: " + join(c.stack));
      emit(out, write_instance(c.instance) + comment_block(lines));
      return c.report.all() ? 0 : 1;
    }
    if (*g_grid) {
      GridTilingInstance gt = parse_gridtiling(read_file(gt_file));
      GridTilingBuild b = build_gridtiling(gt);
      const GridTilingParams& p = b.params;
      emit(out, write_instance(b.instance) +
                    comment_block({"grid tiling n=" + std::to_string(p.n) + " kappa=" + std::to_string(p.kappa),
                                   "L=" + std::to_string(p.L) + " d=" + std::to_string(p.d) + " k=" + std::to_string(p.k)}));
      return 0;
    }
    if (*g_gw) {
      GridTilingInstance gt = parse_gridtiling(read_file(gt_file));
      Instance inst = gen_gridtiling(gt);
      emit(out, write_witness(gridtiling_witness(gt, inst, int_list(rows), int_list(cols))));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "dispersal: " << e.what() << "\n";
    return 2;
  }
  return kUsage;
}
