#include "ecc/graph_canon.hpp"

namespace ecc::detail {

namespace {

using PermV = std::vector<int>;

PermV compose(const PermV& a, const PermV& b) {  // (a*b)(x) = a(b(x))
  PermV r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

PermV invert(const PermV& a) {
  PermV r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = int(i);
  return r;
}

bool is_identity(const PermV& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != int(i)) return false;
  return true;
}

// Deterministic Schreier-Sims: stabilizer chain with explicit transversals,
// closed under Schreier generators by a worklist.
struct StabChain {
  int degree;
  std::vector<int> base;
  std::vector<std::vector<PermV>> level_gens;      // gens fixing base[0..i-1]
  std::vector<std::vector<int>> transversal_slot;  // per level: point -> index into transversal perms, -1 outside orbit
  std::vector<std::vector<PermV>> transversal;     // per level: coset reps mapping base[i] -> point

  explicit StabChain(int n) : degree(n) {}

  void rebuild_orbit(size_t lvl) {
    int b = base[lvl];
    auto& slot = transversal_slot[lvl];
    auto& trans = transversal[lvl];
    slot.assign(degree, -1);
    trans.clear();
    PermV id(degree);
    for (int i = 0; i < degree; ++i) id[i] = i;
    slot[b] = 0;
    trans.push_back(id);
    std::vector<int> frontier{b};
    while (!frontier.empty()) {
      int p = frontier.back();
      frontier.pop_back();
      for (const auto& g : level_gens[lvl]) {
        int q = g[p];
        if (slot[q] < 0) {
          slot[q] = int(trans.size());
          trans.push_back(compose(g, trans[slot[p]]));
          frontier.push_back(q);
        }
      }
    }
  }

  // Returns the residue of g after sifting, plus the level it got stuck at.
  std::pair<PermV, size_t> sift(PermV g) const {
    for (size_t lvl = 0; lvl < base.size(); ++lvl) {
      int img = g[base[lvl]];
      int s = transversal_slot[lvl][img];
      if (s < 0) return {g, lvl};
      g = compose(invert(transversal[lvl][s]), g);
    }
    return {g, base.size()};
  }

  void add_generator(const PermV& g0) {
    std::vector<PermV> work{g0};
    while (!work.empty()) {
      PermV g = std::move(work.back());
      work.pop_back();
      auto [h, lvl] = sift(std::move(g));
      if (is_identity(h)) continue;
      if (lvl == base.size()) {
        int b = -1;
        for (int i = 0; i < degree; ++i)
          if (h[i] != i) {
            b = i;
            break;
          }
        base.push_back(b);
        level_gens.emplace_back();
        transversal_slot.emplace_back();
        transversal.emplace_back();
        rebuild_orbit(base.size() - 1);
      }
      // h fixes base[0..lvl-1]; it is a generator at every level <= lvl
      for (size_t i = 0; i <= lvl && i < base.size(); ++i) level_gens[i].push_back(h);
      for (size_t i = 0; i <= lvl && i < base.size(); ++i) {
        size_t old_orbit = transversal[i].size();
        rebuild_orbit(i);
        // Schreier generators of the (possibly grown) orbit
        for (size_t s = 0; s < transversal[i].size(); ++s) {
          for (const auto& gen : level_gens[i]) {
            PermV u = compose(gen, transversal[i][s]);
            int img = u[base[i]];
            PermV schreier = compose(invert(transversal[i][transversal_slot[i][img]]), u);
            if (!is_identity(schreier)) {
              auto [res, rl] = sift(schreier);
              if (!is_identity(res)) work.push_back(res);
            }
          }
        }
        (void)old_orbit;
      }
    }
  }

  unsigned long long order() const {
    unsigned long long o = 1;
    for (const auto& t : transversal) {
      unsigned long long next = o * (unsigned long long)t.size();
      if (t.size() && next / t.size() != o) throw std::overflow_error("group order overflow");
      o = next;
    }
    return o;
  }
};

}  // namespace

unsigned long long permutation_group_order(int n, const std::vector<std::vector<int>>& gens) {
  if (gens.empty()) return 1;
  StabChain chain(n);
  for (const auto& g : gens) chain.add_generator(g);
  return chain.order();
}

namespace {

template <int W>
CanonOutput run_width(int n, const std::vector<std::uint64_t>& adj, int stride, const std::vector<int>& init_cell) {
  std::vector<std::array<std::uint64_t, W>> rows(n);
  for (int v = 0; v < n; ++v) {
    rows[v].fill(0);
    for (int w = 0; w < stride; ++w) rows[v][w] = adj[size_t(v) * stride + w];
  }
  GraphCanon<W> canon(n, rows, init_cell);
  canon.run();
  CanonOutput out;
  out.label = std::move(canon.best_label);
  out.cert = std::move(canon.best_cert);
  out.generators = std::move(canon.generators);
  out.orbit = std::move(canon.orbit);
  out.aut_order = canon.aut_order;
  return out;
}

}  // namespace

CanonOutput canonize_graph(int n, const std::vector<std::uint64_t>& adj, int stride, const std::vector<int>& init_cell) {
  int need = (n + 63) / 64;
  if (need > stride) throw std::invalid_argument("canonize_graph: stride too small");
  if (need <= 1) return run_width<1>(n, adj, stride, init_cell);
  if (need <= 2) return run_width<2>(n, adj, stride, init_cell);
  if (need <= 3) return run_width<3>(n, adj, stride, init_cell);
  if (need <= 5) return run_width<5>(n, adj, stride, init_cell);
  if (need <= 9) return run_width<9>(n, adj, stride, init_cell);
  if (need <= 17) return run_width<17>(n, adj, stride, init_cell);
  if (need <= 33) return run_width<33>(n, adj, stride, init_cell);
  throw std::invalid_argument("canonize_graph: graph too large");
}

}  // namespace ecc::detail
