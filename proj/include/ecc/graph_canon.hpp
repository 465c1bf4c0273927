#ifndef ECC_GRAPH_CANON_HPP
#define ECC_GRAPH_CANON_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace ecc::detail {

// Canonical labeling of a vertex-colored graph by partition refinement with
// individualization backtracking, pruned by discovered automorphisms and by
// the refinement trace of the best leaf.  The canonical leaf maximizes the
// pair (trace vector, adjacency certificate), an isomorphism-invariant
// choice.  Group order is computed afterwards from the discovered generators
// with a Schreier-Sims closure; the tests check orders against brute force.

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Exact order of the permutation group generated by `gens` (degree n).
unsigned long long permutation_group_order(int n, const std::vector<std::vector<int>>& gens);

template <int W>
class GraphCanon {
 public:
  using Row = std::array<std::uint64_t, W>;

  GraphCanon(int n, const std::vector<Row>& adj, const std::vector<int>& init_cell)
      : n_(n), adj_(adj), orbits_(n) {
    if (int(adj.size()) != n || int(init_cell.size()) != n) throw std::invalid_argument("graph_canon: bad input sizes");
    states_.resize(n + 2);
    cur_trace_.assign(n + 2, 0);
    State& st = state_at(0);
    for (int v = 0; v < n; ++v) st.elems[v] = v;
    std::stable_sort(st.elems.begin(), st.elems.end(), [&](int a, int b) { return init_cell[a] < init_cell[b]; });
    for (int p = 0; p < n; ++p) st.pos[st.elems[p]] = p;
    int start = 0;
    for (int p = 0; p < n; ++p) {
      if (p + 1 == n || init_cell[st.elems[p + 1]] != init_cell[st.elems[p]]) {
        for (int q = start; q <= p; ++q) st.cstart[q] = start;
        st.clen[start] = p + 1 - start;
        start = p + 1;
      }
    }
  }

  void run() {
    State& st = states_[0];
    std::vector<int> queue;
    for (int p = 0; p < n_; p += st.clen[p]) queue.push_back(p);
    dfs(0, queue);
    aut_order = permutation_group_order(n_, generators);
    orbit.resize(n_);
    for (int v = 0; v < n_; ++v) orbit[v] = orbits_.find(v);
  }

  std::vector<int> best_label;  // vertex -> canonical position
  std::vector<std::uint8_t> best_cert;
  std::vector<std::vector<int>> generators;
  std::vector<int> orbit;
  unsigned long long aut_order = 1;

 private:
  struct State {
    std::vector<int> elems, pos, cstart, clen;
    void copy_from(const State& o) {
      elems = o.elems;
      pos = o.pos;
      cstart = o.cstart;
      clen = o.clen;
    }
  };

  State& state_at(int level) {
    State& s = states_[level];
    if (int(s.elems.size()) != n_) {
      s.elems.resize(n_);
      s.pos.resize(n_);
      s.cstart.resize(n_);
      s.clen.assign(n_, 0);
    }
    return s;
  }

  static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  bool edge(int a, int b) const { return (adj_[a][b >> 6] >> (b & 63)) & 1; }

  int count_in(int v, const Row& mask) const {
    int c = 0;
    for (int w = 0; w < W; ++w) c += std::popcount(adj_[v][w] & mask[w]);
    return c;
  }

  // Equitable refinement; returns the trace hash of the refinement events.
  // The queue holds start positions of pending splitter cells; every fragment
  // created by a split is enqueued, which keeps the result equitable.
  std::uint64_t refine(State& st, std::vector<int>& queue) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    inq_.assign(n_, 0);
    for (int s : queue) inq_[s] = 1;
    size_t qi = 0;
    Row mask;
    while (qi < queue.size()) {
      int s = queue[qi++];
      inq_[s] = 0;
      mask.fill(0);
      int slen = st.clen[s];
      for (int p = s; p < s + slen; ++p) {
        int v = st.elems[p];
        mask[v >> 6] |= std::uint64_t{1} << (v & 63);
      }
      for (int p = 0; p < n_;) {
        int len = st.clen[p];
        if (len <= 1) {
          ++p;
          continue;
        }
        int first = count_in(st.elems[p], mask);
        bool uniform = true;
        for (int q = p + 1; q < p + len; ++q)
          if (count_in(st.elems[q], mask) != first) {
            uniform = false;
            break;
          }
        if (uniform) {
          p += len;
          continue;
        }
        tmp_.clear();
        for (int q = p; q < p + len; ++q) tmp_.emplace_back(count_in(st.elems[q], mask), st.elems[q]);
        std::stable_sort(tmp_.begin(), tmp_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        h = mix(h, (std::uint64_t(s) << 32) | std::uint64_t(p));
        int frag = p;
        for (int q = 0; q < len; ++q) {
          st.elems[p + q] = tmp_[q].second;
          st.pos[tmp_[q].second] = p + q;
          if (q + 1 == len || tmp_[q + 1].first != tmp_[q].first) {
            for (int r = frag; r <= p + q; ++r) st.cstart[r] = frag;
            st.clen[frag] = p + q + 1 - frag;
            h = mix(h, (std::uint64_t(tmp_[q].first) << 32) | std::uint64_t(p + q + 1 - frag));
            if (!inq_[frag]) {
              inq_[frag] = 1;
              queue.push_back(frag);
            }
            frag = p + q + 1;
          }
        }
        p += len;
      }
    }
    return h;
  }

  bool discrete(const State& st) const {
    for (int p = 0; p < n_; p += st.clen[p])
      if (st.clen[p] != 1) return false;
    return true;
  }

  std::vector<std::uint8_t> make_cert(const State& st) const {
    std::vector<std::uint8_t> cert((size_t(n_) * (n_ - 1) / 2 + 7) / 8, 0);
    size_t bit = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j, ++bit)
        if (edge(st.elems[i], st.elems[j])) cert[bit >> 3] |= std::uint8_t(1) << (bit & 7);
    return cert;
  }

  void record_automorphism(const State& st, const std::vector<int>& target_elems) {
    std::vector<int> g(n_);
    bool identity = true;
    for (int p = 0; p < n_; ++p) {
      g[st.elems[p]] = target_elems[p];
      if (st.elems[p] != target_elems[p]) identity = false;
    }
    if (identity) return;
    for (int v = 0; v < n_; ++v) orbits_.unite(v, g[v]);
    generators.push_back(std::move(g));
  }

  // Lexicographic comparison of cur_trace_[0..len) against the best path,
  // with an equal prefix resolved by depth (longer path wins).
  int compare_prefix(int len, bool at_leaf) const {
    int bl = int(best_traces_.size());
    int m = std::min(len, bl);
    for (int i = 0; i < m; ++i) {
      if (cur_trace_[i] != best_traces_[i]) return cur_trace_[i] > best_traces_[i] ? 1 : -1;
    }
    if (len > bl) return 1;
    if (len < bl) return at_leaf ? -1 : 0;
    return 0;
  }

  void dfs(int level, std::vector<int>& queue) {
    State& st = states_[level];
    cur_trace_[level] = refine(st, queue);
    if (have_best_ && compare_prefix(level + 1, false) < 0) return;
    if (discrete(st)) {
      auto cert = make_cert(st);
      if (!have_first_) {
        have_first_ = true;
        first_elems_ = st.elems;
        first_cert_ = cert;
      } else if (cert == first_cert_) {
        record_automorphism(st, first_elems_);
      }
      if (!have_best_) {
        have_best_ = true;
        set_best(st, cert, level);
        return;
      }
      int c = compare_prefix(level + 1, true);
      if (c > 0) {
        set_best(st, cert, level);
      } else if (c == 0) {
        int cc = std::memcmp(cert.data(), best_cert.data(), cert.size());
        if (cc > 0)
          set_best(st, cert, level);
        else if (cc == 0 && st.elems != best_elems_)
          record_automorphism(st, best_elems_);
      }
      return;
    }
    int target = -1, tlen = n_ + 1;
    for (int p = 0; p < n_; p += st.clen[p])
      if (st.clen[p] > 1 && st.clen[p] < tlen) {
        target = p;
        tlen = st.clen[p];
      }
    std::vector<int> members(st.elems.begin() + target, st.elems.begin() + target + tlen);
    std::vector<int> tried;
    size_t orbit_gen_count = size_t(-1);
    std::vector<int> oid;
    for (int v : members) {
      if (!tried.empty()) {
        if (orbit_gen_count != generators.size()) {
          oid = prefix_orbits(level);
          orbit_gen_count = generators.size();
        }
        bool skip = false;
        for (int u : tried)
          if (oid[u] == oid[v]) {
            skip = true;
            break;
          }
        if (skip) continue;
      }
      State& child = state_at(level + 1);
      child.copy_from(st);
      individualize(child, target, v);
      path_.resize(level);
      path_.push_back(v);
      std::vector<int> q{target, target + 1};
      dfs(level + 1, q);
      path_.resize(level);
      tried.push_back(v);
    }
  }

  void set_best(const State& st, const std::vector<std::uint8_t>& cert, int level) {
    best_traces_.assign(cur_trace_.begin(), cur_trace_.begin() + level + 1);
    best_cert = cert;
    best_elems_ = st.elems;
    best_label.assign(n_, 0);
    for (int p = 0; p < n_; ++p) best_label[st.elems[p]] = p;
  }

  void individualize(State& st, int target, int v) {
    int pv = st.pos[v];
    int other = st.elems[target];
    st.elems[target] = v;
    st.elems[pv] = other;
    st.pos[v] = target;
    st.pos[other] = pv;
    int len = st.clen[target];
    st.clen[target] = 1;
    st.clen[target + 1] = len - 1;
    st.cstart[target] = target;
    for (int q = target + 1; q < target + len; ++q) st.cstart[q] = target + 1;
  }

  std::vector<int> prefix_orbits(int level) {
    UnionFind uf(n_);
    for (const auto& g : generators) {
      bool fixes = true;
      for (int i = 0; i < level && fixes; ++i) fixes = g[path_[i]] == path_[i];
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) uf.unite(v, g[v]);
    }
    std::vector<int> oid(n_);
    for (int v = 0; v < n_; ++v) oid[v] = uf.find(v);
    return oid;
  }

  int n_;
  const std::vector<Row>& adj_;
  std::vector<State> states_;
  std::vector<int> path_;
  std::vector<std::uint64_t> cur_trace_;
  std::vector<char> inq_;
  std::vector<std::pair<int, int>> tmp_;

  bool have_first_ = false, have_best_ = false;
  std::vector<int> first_elems_;
  std::vector<std::uint8_t> first_cert_;
  std::vector<std::uint64_t> best_traces_;
  std::vector<int> best_elems_;
  UnionFind orbits_;
};

struct CanonOutput {
  std::vector<int> label;
  std::vector<std::uint8_t> cert;
  std::vector<std::vector<int>> generators;
  std::vector<int> orbit;
  unsigned long long aut_order = 1;
};

// Row-major bitset adjacency (stride words per row); dispatches to the
// smallest compiled width.
CanonOutput canonize_graph(int n, const std::vector<std::uint64_t>& adj, int stride, const std::vector<int>& init_cell);

}  // namespace ecc::detail

#endif
