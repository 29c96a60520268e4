#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

#include "dispersal/kernel.hpp"
#include "feasibility_detail.hpp"

namespace dispersal {

std::string verdict_name(Answer::Verdict v) {
  switch (v) {
    case Answer::Verdict::yes:
      return "yes";
    case Answer::Verdict::no:
      return "no";
    default:
      return "unknown";
  }
}

namespace {

using detail::Clock;

std::string set_text(const std::vector<std::size_t>& set, const std::vector<std::size_t>& to_input) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < set.size(); ++i) out << (i ? "," : "") << to_input[set[i]];
  out << "}";
  return out.str();
}

Answer unknown(std::string reason, Answer a = {}) {
  a.verdict = Answer::Verdict::unknown;
  a.reason = std::move(reason);
  return a;
}

// Lattice points that a disk moving from any of the origins could touch.
std::vector<Point> block_obstacles(const Instance& inst, const std::vector<Point>& origins, const Rational& reach) {
  std::vector<Point> out;
  std::map<std::pair<Rational, Rational>, bool> seen;
  for (const Point& o : origins)
    for (Point& p : blocking_points(inst, o, reach)) {
      auto key = std::make_pair(*p.x.rational(), *p.y.rational());
      if (seen.emplace(key, true).second) out.push_back(std::move(p));
    }
  return out;
}

}  // namespace

Answer solve(const Instance& inst, const SolverConfig& cfg) {
  if (cfg.precision_cap > 0) set_precision_cap(cfg.precision_cap);
  std::optional<Clock::time_point> deadline;
  if (cfg.time_budget > 0)
    deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg.time_budget));
  Answer ans;

  // Kernelize explicit-only instances; block instances are searched as given.
  Instance work = inst;
  std::vector<std::size_t> to_input(inst.disks.size());
  for (std::size_t i = 0; i < to_input.size(); ++i) to_input[i] = i;
  try {
    if (inst.blocks.empty()) {
      KernelResult kr = kernelize(inst);
      if (kr.trivially_no) {
        ans.verdict = Answer::Verdict::no;
        ans.log.push_back("maximal matching exceeds k");
        return ans;
      }
      work = std::move(kr.instance);
      to_input = kr.report.kept;
      ans.log.push_back("kernel keeps " + std::to_string(work.disks.size()) + " of " +
                        std::to_string(inst.disks.size()) + " disks");
    }
  } catch (const std::exception& e) {
    return unknown(std::string("kernel: ") + e.what(), ans);
  }

  std::vector<Point> centers;
  for (const Disk& d : work.disks) centers.push_back(d.center);
  IntersectionGraph g;
  try {
    g = build_graph(centers);
  } catch (const IndeterminateError& e) {
    return unknown(e.what(), ans);
  }

  // Explicit disks sitting on lattice disks have to move.
  std::vector<std::size_t> forced;
  bool forced_exact = true;
  for (std::size_t i = 0; i < centers.size() && !work.blocks.empty(); ++i) {
    for (const Point& q : blocking_points(work, centers[i], 2)) {
      Tri t = overlap(Disk{centers[i]}, Disk{q});
      if (t == Tri::no) continue;
      forced_exact = forced_exact && t == Tri::yes;
      forced.push_back(i);
      break;
    }
  }

  if (g.edges.empty() && forced.empty()) {
    ans.verdict = Answer::Verdict::yes;
    ans.log.push_back("no overlaps");
    return ans;
  }

  const long long cap = cfg.max_candidate_set_size < 0 ? work.k : std::min(cfg.max_candidate_set_size, work.k);
  const MoveRadius mr = move_radius_upper(work.d2);
  const Rational reach = mr.d + 2;
  const unsigned jobs = std::max(1u, cfg.jobs);
  bool any_unknown = !forced_exact;
  std::string unknown_reason = forced_exact ? "" : "undecidable overlap with lattice disks";
  bool out_of_time = false;
  const std::size_t log_cap = 200;

  std::vector<std::vector<std::size_t>> batch;
  auto evaluate = [&]() -> bool {
    std::vector<Feasibility> results(batch.size());
    auto worker = [&](unsigned id) {
      for (std::size_t b = id; b < batch.size(); b += jobs) {
        const auto& set = batch[b];
        std::vector<Point> origins, fixed;
        std::vector<bool> moving(centers.size(), false);
        for (std::size_t v : set) {
          moving[v] = true;
          origins.push_back(centers[v]);
        }
        for (std::size_t v = 0; v < centers.size(); ++v)
          if (!moving[v]) fixed.push_back(centers[v]);
        for (Point& p : block_obstacles(work, origins, reach)) fixed.push_back(std::move(p));
        detail::Problem pb = detail::make_problem(fixed, origins, work.d2, work.variant);
        pb.deadline = deadline;
        results[b] = detail::run_pipeline(pb, cfg);
      }
    };
    if (jobs == 1 || batch.size() == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
      for (auto& th : pool) th.join();
    }
    // Canonical order decides, whatever finished first.
    for (std::size_t b = 0; b < batch.size(); ++b) {
      ++ans.sets_tried;
      const Feasibility& f = results[b];
      if (f.status == Feasibility::Status::feasible) {
        for (std::size_t i = 0; i < batch[b].size(); ++i)
          if (!exactly_equal(f.assignment[i], centers[batch[b][i]]))
            ans.witness.moves.emplace(to_input[batch[b][i]], f.assignment[i]);
        ans.verdict = Answer::Verdict::yes;
        ans.log.push_back("set " + set_text(batch[b], to_input) + ": feasible (" + f.stage + ")");
        return true;
      }
      std::string line = "set " + set_text(batch[b], to_input) + ": ";
      if (f.status == Feasibility::Status::infeasible) {
        line += f.stage == "grid" ? "infeasible at delta " + to_string(f.delta) : "infeasible (" + f.stage + ")";
      } else {
        any_unknown = true;
        if (unknown_reason.empty()) unknown_reason = "undecided set " + set_text(batch[b], to_input) + " (" + f.stage + ")";
        line += "unknown (" + f.stage + ")";
      }
      if (ans.log.size() < log_cap) ans.log.push_back(line);
    }
    batch.clear();
    return false;
  };

  bool found = false;
  enumerate_candidate_sets(g, cap, [&](const std::vector<std::size_t>& set) {
    if (!std::includes(set.begin(), set.end(), forced.begin(), forced.end())) return true;
    if (deadline && Clock::now() > *deadline) {
      out_of_time = true;
      return false;
    }
    batch.push_back(set);
    if (batch.size() >= 4 * jobs) found = evaluate();
    return !found;
  });
  if (!found && !batch.empty() && !out_of_time) found = evaluate();
  if (found) return ans;

  if (out_of_time) return unknown("budget", ans);
  if (any_unknown) return unknown(unknown_reason, ans);
  if (cap < work.k) return unknown("candidate sets capped at " + std::to_string(cap), ans);
  ans.verdict = Answer::Verdict::no;
  return ans;
}

}  // namespace dispersal
