#include "ecc/clique.hpp"

#include <numeric>

namespace ecc {

namespace {

// Branch and bound over a fixed vertex order (descending degree, then index).
// Candidate sets are bitsets in the *reordered* numbering, so "candidates
// after v" is a word-aligned suffix mask.
struct CliqueSearch {
  const Graph& g;
  int kmin, kmax;
  const CliqueSink& sink;
  int nv, stride;
  std::vector<int> order;      // position -> original vertex
  std::vector<std::uint64_t> radj;  // reordered adjacency
  std::vector<int> clique;     // positions, ascending
  std::vector<std::uint64_t> pool;  // candidate sets per depth
  std::vector<int> color_buf;
  bool aborted = false;
  bool use_color_bound = false;

  CliqueSearch(const Graph& gr, int kmin_, int kmax_, const CliqueSink& s)
      : g(gr), kmin(kmin_), kmax(kmax_), sink(s), nv(gr.size()), stride(gr.stride()) {
    order.resize(nv);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> deg(nv);
    for (int v = 0; v < nv; ++v) deg[v] = gr.degree(v);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });
    std::vector<int> pos(nv);
    for (int p = 0; p < nv; ++p) pos[order[p]] = p;
    radj.assign(size_t(nv) * stride, 0);
    for (int v = 0; v < nv; ++v)
      for (int u = 0; u < nv; ++u)
        if (gr.edge(v, u)) radj[size_t(pos[v]) * stride + (pos[u] >> 6)] |= std::uint64_t{1} << (pos[u] & 63);
    pool.assign(size_t(nv + 2) * stride, 0);
    color_buf.resize(nv);
    use_color_bound = kmin >= 6 && kmin == kmax;
  }

  bool run() {
    if (kmax < 0) return true;
    if (kmin <= 0) {
      static const std::vector<int> empty;
      if (!sink(empty)) return false;
    }
    if (kmax == 0 || nv == 0) return true;
    std::uint64_t* cand = pool.data();
    for (int p = 0; p < nv; ++p) cand[p >> 6] |= std::uint64_t{1} << (p & 63);
    expand(cand, 0);
    return !aborted;
  }

  int popcount_set(const std::uint64_t* s) const {
    int c = 0;
    for (int w = 0; w < stride; ++w) c += std::popcount(s[w]);
    return c;
  }

  // Greedy coloring upper bound on the clique number of the candidate set.
  int color_bound(const std::uint64_t* cand, int cap) const {
    std::vector<std::uint64_t> left(cand, cand + stride);
    int colors = 0;
    while (colors <= cap) {
      bool any = false;
      std::vector<std::uint64_t> cls(stride, 0);
      for (int w = 0; w < stride; ++w) {
        std::uint64_t avail = left[w];
        while (avail) {
          int bit = std::countr_zero(avail);
          avail &= avail - 1;
          int p = (w << 6) | bit;
          bool independent = true;
          const std::uint64_t* row = radj.data() + size_t(p) * stride;
          for (int x = 0; x < stride; ++x)
            if (row[x] & cls[x]) {
              independent = false;
              break;
            }
          if (independent) {
            cls[p >> 6] |= std::uint64_t{1} << (p & 63);
            left[p >> 6] &= ~(std::uint64_t{1} << (p & 63));
            any = true;
          }
        }
      }
      if (!any) break;
      ++colors;
    }
    return colors;
  }

  void expand(std::uint64_t* cand, int depth) {
    if (aborted) return;
    int sz = int(clique.size());
    int remaining = popcount_set(cand);
    if (sz + remaining < kmin) return;
    if (use_color_bound && remaining > kmin - sz && kmin - sz >= 4) {
      if (sz + color_bound(cand, kmin - sz) < kmin) return;
    }
    std::uint64_t* next = pool.data() + size_t(depth + 1) * stride;
    for (int w = 0; w < stride; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        int bit = std::countr_zero(bits);
        bits &= bits - 1;
        int p = (w << 6) | bit;
        // candidates strictly after p, intersected with p's neighbours
        clique.push_back(p);
        if (int(clique.size()) >= kmin && int(clique.size()) <= kmax) {
          if (!emit()) {
            aborted = true;
            clique.pop_back();
            return;
          }
        }
        if (int(clique.size()) < kmax) {
          const std::uint64_t* row = radj.data() + size_t(p) * stride;
          bool nonempty = false;
          for (int x = 0; x < stride; ++x) {
            std::uint64_t m = cand[x] & row[x];
            if (x == w) m &= ~((std::uint64_t{2} << bit) - 1);
            else if (x < w) m = 0;
            next[x] = m;
            nonempty |= m != 0;
          }
          if (nonempty) expand(next, depth + 1);
        }
        clique.pop_back();
        if (aborted) return;
        // remaining-count prune as the candidate pool shrinks
        --remaining;
        if (sz + remaining < kmin) return;
      }
    }
  }

  bool emit() {
    std::vector<int> verts(clique.size());
    for (size_t i = 0; i < clique.size(); ++i) verts[i] = order[clique[i]];
    std::sort(verts.begin(), verts.end());
    return sink(verts);
  }
};

}  // namespace

bool cliques_in_range(const Graph& g, int kmin, int kmax, const CliqueSink& sink) {
  CliqueSearch s(g, std::max(kmin, 0), kmax, sink);
  return s.run();
}

bool cliques_of_size(const Graph& g, int k, const CliqueSink& sink) {
  if (k < 0) throw std::invalid_argument("cliques_of_size: negative k");
  return cliques_in_range(g, k, k, sink);
}

std::vector<std::vector<int>> collect_cliques(const Graph& g, int k) {
  std::vector<std::vector<int>> out;
  cliques_of_size(g, k, [&](const std::vector<int>& c) {
    out.push_back(c);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bits_t> lengthening_candidates(const Code& c, int d, bool even_chain) {
  std::vector<bits_t> cands;
  const int n = c.n();
  int parity = 0;
  if (even_chain && c.size() > 0) {
    parity = std::popcount(c.word(0)) & 1;
    for (bits_t w : c.words())
      if ((std::popcount(w) & 1) != parity) throw std::invalid_argument("lengthening_candidates: even-distance code required");
  }
  for (bits_t w = 0; w < (bits_t{1} << n); ++w) {
    if (even_chain && (std::popcount(w) & 1) == parity) continue;
    if (c.distance_to(w) >= d - 1) cands.push_back(w);
  }
  return cands;
}

CompatibilityGraph compatibility_graph_general(const Code& c, int d, bool even_chain) {
  CompatibilityGraph cg;
  cg.candidates = lengthening_candidates(c, d, even_chain);
  int nv = int(cg.candidates.size());
  cg.graph = Graph(nv);
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      if (distance_bits(cg.candidates[i], cg.candidates[j]) >= d) cg.graph.add_edge(i, j);
  return cg;
}

CompatibilityGraph compatibility_graph(const Code& c) { return compatibility_graph_general(c, 4, true); }

std::vector<Code> lengthen_direct(const Code& c, int added) {
  CompatibilityGraph cg = compatibility_graph_general(c, 4, true);
  std::vector<Code> out;
  cliques_of_size(cg.graph, added, [&](const std::vector<int>& verts) {
    std::vector<bits_t> words;
    words.reserve(verts.size());
    for (int v : verts) words.push_back(cg.candidates[v]);
    out.push_back(lengthen(c, 0, 0, words));
    return true;
  });
  std::sort(out.begin(), out.end(), [](const Code& a, const Code& b) { return a.words() < b.words(); });
  return out;
}

std::vector<Code> lengthen_decomposed(const Code& c) {
  const int np = c.n();
  if (np < 10 || np > 14) throw std::invalid_argument("lengthen_decomposed: parent length must be 10..14");
  if (c.size() != (1 << (np - 5))) throw std::invalid_argument("lengthen_decomposed: parent size must be 2^(n-5)");
  const int nblocks = 1 << (np - 10);
  const int block_shift = np - (np - 10);  // candidates keyed by top np-10 bits

  CompatibilityGraph cg = compatibility_graph_general(c, 4, true);
  const int nv = int(cg.candidates.size());

  // split candidate indices by prefix block
  std::vector<std::vector<int>> block_verts(nblocks);
  for (int v = 0; v < nv; ++v) block_verts[int(cg.candidates[v] >> block_shift)].push_back(v);

  struct BlockClique {
    int block;
    std::vector<int> verts;  // indices into cg.candidates
  };
  std::vector<BlockClique> meta;
  for (int b = 0; b < nblocks; ++b) {
    const auto& verts = block_verts[b];
    Graph sub(int(verts.size()));
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = i + 1; j < verts.size(); ++j)
        if (cg.graph.edge(verts[i], verts[j])) sub.add_edge(int(i), int(j));
    cliques_of_size(sub, 32, [&](const std::vector<int>& local) {
      BlockClique bc;
      bc.block = b;
      for (int x : local) bc.verts.push_back(verts[x]);
      meta.push_back(std::move(bc));
      return true;
    });
  }

  // meta-graph: vertices are 32-cliques; edges between cliques of different
  // blocks whose union still has pairwise distance >= 4
  const int mv = int(meta.size());
  std::vector<Code> out;
  if (nblocks == 1) {
    for (const auto& bc : meta) {
      std::vector<bits_t> words;
      for (int v : bc.verts) words.push_back(cg.candidates[v]);
      out.push_back(lengthen(c, 0, 0, words));
    }
    std::sort(out.begin(), out.end(), [](const Code& a, const Code& b) { return a.words() < b.words(); });
    return out;
  }
  Graph mg(mv);
  for (int i = 0; i < mv; ++i)
    for (int j = i + 1; j < mv; ++j) {
      if (meta[i].block == meta[j].block) continue;
      bool ok = true;
      for (int u : meta[i].verts) {
        for (int v : meta[j].verts)
          if (!cg.graph.edge(u, v)) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (ok) mg.add_edge(i, j);
    }
  cliques_of_size(mg, nblocks, [&](const std::vector<int>& chosen) {
    std::vector<bits_t> words;
    words.reserve(32 * chosen.size());
    for (int ci : chosen)
      for (int v : meta[ci].verts) words.push_back(cg.candidates[v]);
    out.push_back(lengthen(c, 0, 0, words));
    return true;
  });
  std::sort(out.begin(), out.end(), [](const Code& a, const Code& b) { return a.words() < b.words(); });
  return out;
}

}  // namespace ecc
