#include <algorithm>
#include <set>

#include "dispersal/solver.hpp"

namespace dispersal {

namespace {

// Bounded search tree: branch on the first uncovered edge.
void branch(const IntersectionGraph& g, std::size_t budget, std::vector<bool>& in, std::vector<std::size_t>& chosen,
            std::set<std::vector<std::size_t>>& out) {
  auto open = std::find_if(g.edges.begin(), g.edges.end(), [&](const Edge& e) { return !in[e.first] && !in[e.second]; });
  if (open == g.edges.end()) {
    std::vector<std::size_t> s = chosen;
    std::sort(s.begin(), s.end());
    out.insert(std::move(s));
    return;
  }
  if (chosen.size() == budget) return;
  for (std::size_t v : {open->first, open->second}) {
    in[v] = true;
    chosen.push_back(v);
    branch(g, budget, in, chosen, out);
    chosen.pop_back();
    in[v] = false;
  }
}

// Lexicographic walk over all size-s supersets of some base cover.
bool extend(std::size_t n, std::size_t size, const std::set<std::vector<std::size_t>>& bases,
            const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> cur;
  std::function<bool(std::size_t)> rec = [&](std::size_t next) -> bool {
    if (cur.size() == size) {
      for (const auto& b : bases)
        if (b.size() <= size && std::includes(cur.begin(), cur.end(), b.begin(), b.end())) return visit(cur);
      return true;
    }
    for (std::size_t v = next; v + (size - cur.size()) <= n; ++v) {
      cur.push_back(v);
      if (!rec(v + 1)) return false;
      cur.pop_back();
    }
    return true;
  };
  return rec(0);
}

}  // namespace

void enumerate_candidate_sets(const IntersectionGraph& g, long long k,
                              const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k < 0) return;
  const std::size_t budget = static_cast<std::size_t>(std::min<long long>(k, static_cast<long long>(g.vertices)));
  std::set<std::vector<std::size_t>> bases;
  std::vector<bool> in(g.vertices, false);
  std::vector<std::size_t> chosen;
  branch(g, budget, in, chosen, bases);
  if (bases.empty()) return;
  // Keep only inclusion-minimal bases; the rest are reached as supersets.
  std::vector<std::vector<std::size_t>> by_size(bases.begin(), bases.end());
  std::stable_sort(by_size.begin(), by_size.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::set<std::vector<std::size_t>> minimal;
  for (const auto& b : by_size) {
    bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](const auto& m) {
      return std::includes(b.begin(), b.end(), m.begin(), m.end());
    });
    if (!dominated) minimal.insert(b);
  }
  std::size_t smallest = budget;
  for (const auto& b : minimal) smallest = std::min(smallest, b.size());
  for (std::size_t s = smallest; s <= budget; ++s)
    if (!extend(g.vertices, s, minimal, visit)) return;
}

std::vector<std::vector<std::size_t>> candidate_sets(const IntersectionGraph& g, long long k) {
  std::vector<std::vector<std::size_t>> out;
  enumerate_candidate_sets(g, k, [&](const std::vector<std::size_t>& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace dispersal
