#include "ecc/equivalence.hpp"

#include <map>

#include "ecc/graph_canon.hpp"

namespace ecc {

namespace {

// Code graph: two vertices per coordinate (one per value), one per codeword.
// Vertex indices: (coord c, value b) -> 2c+b, codeword j -> 2n+j.
// Edges: (c,0)-(c,1) and codeword j - (c, bit_c(w_j)).
struct CodeGraphData {
  int nv = 0;
  int stride = 0;
  std::vector<std::uint64_t> adj;
  std::vector<int> init_cell;
  std::vector<std::int64_t> cell_keys;  // invariant keys, part of the form header
};

void add_edge(CodeGraphData& g, int a, int b) {
  g.adj[size_t(a) * g.stride + (b >> 6)] |= std::uint64_t{1} << (b & 63);
  g.adj[size_t(b) * g.stride + (a >> 6)] |= std::uint64_t{1} << (a & 63);
}

CodeGraphData build_code_graph(const Code& c) {
  const int n = c.n(), m = c.size();
  CodeGraphData g;
  g.nv = 2 * n + m;
  g.stride = (g.nv + 63) / 64;
  g.adj.assign(size_t(g.nv) * g.stride, 0);
  for (int coord = 0; coord < n; ++coord) add_edge(g, 2 * coord, 2 * coord + 1);
  for (int j = 0; j < m; ++j) {
    bits_t w = c.word(j);
    for (int coord = 0; coord < n; ++coord) add_edge(g, 2 * n + j, 2 * coord + get_coord(w, n, coord));
  }

  // Initial coloring: coordinate-value vertices keyed by their column count,
  // codeword vertices keyed by the quadruple invariant; coordinate cells
  // always precede codeword cells.
  std::vector<std::int64_t> key(g.nv);
  for (int coord = 0; coord < n; ++coord) {
    int ones = 0;
    for (bits_t w : c.words()) ones += get_coord(w, n, coord);
    key[2 * coord] = m - ones;
    key[2 * coord + 1] = ones;
  }
  auto quad = quadruple_invariant(c);
  for (int j = 0; j < m; ++j) key[2 * n + j] = quad[j];

  std::vector<std::int64_t> cv_keys(key.begin(), key.begin() + 2 * n);
  std::sort(cv_keys.begin(), cv_keys.end());
  cv_keys.erase(std::unique(cv_keys.begin(), cv_keys.end()), cv_keys.end());
  std::vector<std::int64_t> w_keys(key.begin() + 2 * n, key.end());
  std::sort(w_keys.begin(), w_keys.end());
  w_keys.erase(std::unique(w_keys.begin(), w_keys.end()), w_keys.end());

  g.init_cell.resize(g.nv);
  for (int v = 0; v < 2 * n; ++v)
    g.init_cell[v] = int(std::lower_bound(cv_keys.begin(), cv_keys.end(), key[v]) - cv_keys.begin());
  for (int v = 2 * n; v < g.nv; ++v)
    g.init_cell[v] = int(cv_keys.size() + size_t(std::lower_bound(w_keys.begin(), w_keys.end(), key[v]) - w_keys.begin()));
  g.cell_keys = cv_keys;
  g.cell_keys.insert(g.cell_keys.end(), w_keys.begin(), w_keys.end());
  return g;
}

void push_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

CodeAut graph_perm_to_code_aut(const Code& c, const std::vector<int>& g) {
  // g maps vertex -> vertex; decode the coordinate permutation and the
  // per-coordinate value swaps.  The code map is x -> p(x + v).
  int n = c.n();
  CodeAut a;
  a.p.assign(n, -1);
  for (int coord = 0; coord < n; ++coord) {
    int img = g[2 * coord];
    a.p[coord] = img / 2;
    if (img & 1) a.v |= unit_bits(n, coord);
  }
  return a;
}

}  // namespace

std::uint64_t form_hash(const CanonicalForm& f) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : f.bytes) h = (h ^ b) * 0x100000001b3ULL;
  return h;
}

std::vector<long long> quadruple_invariant(const Code& c) {
  const int m = c.size();
  std::vector<long long> ordered(m, 0);
  const auto& ws = c.words();
  // neighbours at distance exactly 4, per word
  std::vector<std::vector<int>> d4(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (distance_bits(ws[i], ws[j]) == 4) {
        d4[i].push_back(j);
        d4[j].push_back(i);
      }
  for (int a = 0; a < m; ++a) {
    for (int bi : d4[a]) {
      bits_t x = ws[a] ^ ws[bi];
      for (int ci : d4[a]) {
        if (ci == bi) continue;
        bits_t y = ws[a] ^ ws[ci];
        if (std::popcount(x & y) != 2) continue;
        if (c.contains(ws[a] ^ x ^ y)) ++ordered[a];
      }
    }
  }
  std::vector<long long> quads(m);
  for (int a = 0; a < m; ++a) {
    if (ordered[a] % 6 != 0) throw std::logic_error("quadruple_invariant: count not divisible by 6");
    quads[a] = ordered[a] / 6;
  }
  return quads;
}

CanonicalResult canonical_form(const Code& c) {
  if (c.size() == 0) throw std::invalid_argument("canonical_form: empty code");
  CodeGraphData g = build_code_graph(c);
  auto out = detail::canonize_graph(g.nv, g.adj, g.stride, g.init_cell);

  CanonicalResult r;
  // header: n, M, cell structure with invariant keys, then the adjacency
  // certificate under the canonical labeling
  auto& bytes = r.form.bytes;
  push_u64(bytes, 0x656363666f726d01ULL);
  push_u64(bytes, std::uint64_t(c.n()));
  push_u64(bytes, std::uint64_t(c.size()));
  std::vector<std::int64_t> counts(g.cell_keys.size(), 0);
  for (int v = 0; v < g.nv; ++v) ++counts[g.init_cell[v]];
  push_u64(bytes, g.cell_keys.size());
  for (size_t i = 0; i < g.cell_keys.size(); ++i) {
    push_u64(bytes, std::uint64_t(g.cell_keys[i]));
    push_u64(bytes, std::uint64_t(counts[i]));
  }
  bytes.insert(bytes.end(), out.cert.begin(), out.cert.end());

  r.aut.order = out.aut_order;
  for (const auto& gen : out.generators) r.aut.generators.push_back(graph_perm_to_code_aut(c, gen));
  r.cv_label.assign(2 * c.n(), 0);
  r.cv_orbit.assign(2 * c.n(), 0);
  for (int v = 0; v < 2 * c.n(); ++v) {
    r.cv_label[v] = out.label[v];
    r.cv_orbit[v] = out.orbit[v];
  }
  return r;
}

bool are_equivalent(const Code& a, const Code& b) {
  if (a.n() != b.n() || a.size() != b.size()) return false;
  if (a.size() == 0) return true;
  return canonical_form(a).form == canonical_form(b).form;
}

std::optional<CodeAut> equivalence_witness(const Code& a, const Code& b) {
  if (a.n() != b.n() || a.size() != b.size()) return std::nullopt;
  CodeGraphData ga = build_code_graph(a);
  CodeGraphData gb = build_code_graph(b);
  auto cells = [](const CodeGraphData& g) {
    std::vector<std::int64_t> counts(g.cell_keys.size(), 0);
    for (int v : g.init_cell) ++counts[v];
    return counts;
  };
  if (ga.cell_keys != gb.cell_keys || cells(ga) != cells(gb)) return std::nullopt;
  auto oa = detail::canonize_graph(ga.nv, ga.adj, ga.stride, ga.init_cell);
  auto ob = detail::canonize_graph(gb.nv, gb.adj, gb.stride, gb.init_cell);
  if (oa.cert != ob.cert) return std::nullopt;
  // tau = label_b^{-1} . label_a maps graph of a onto graph of b
  std::vector<int> inv_b(gb.nv);
  for (int v = 0; v < gb.nv; ++v) inv_b[ob.label[v]] = v;
  std::vector<int> tau(ga.nv);
  for (int v = 0; v < ga.nv; ++v) tau[v] = inv_b[oa.label[v]];
  int n = a.n();
  CodeAut w;
  w.p.assign(n, -1);
  for (int coord = 0; coord < n; ++coord) {
    int img = tau[2 * coord];
    w.p[coord] = img / 2;
    if (img & 1) w.v |= unit_bits(n, coord);
  }
  if (!(translate_permute(a, w.v, w.p) == b)) throw std::logic_error("equivalence_witness: reconstruction failed");
  return w;
}

bool augmentation_accept_on(const Code& c, const CanonicalResult& cr, int new_coord, int old_value) {
  const int n = c.n(), m = c.size();
  int best_label = 2 * n + m + 1;
  int best_vertex = -1;
  for (int coord = 0; coord < n; ++coord) {
    int ones = 0;
    for (bits_t w : c.words()) ones += get_coord(w, n, coord);
    int cnt[2] = {m - ones, ones};
    for (int b = 0; b < 2; ++b) {
      if (2 * cnt[b] < m) continue;  // kept half must be a majority
      int v = 2 * coord + b;
      if (cr.cv_label[v] < best_label) {
        best_label = cr.cv_label[v];
        best_vertex = v;
      }
    }
  }
  int probe = 2 * new_coord + old_value;
  return best_vertex >= 0 && cr.cv_orbit[best_vertex] == cr.cv_orbit[probe];
}

bool augmentation_accept(const Code& c, int new_coord, int old_value) {
  if (new_coord < 0 || new_coord >= c.n() || (old_value != 0 && old_value != 1))
    throw std::invalid_argument("augmentation_accept: bad coordinate or value");
  return augmentation_accept_on(c, canonical_form(c), new_coord, old_value);
}

}  // namespace ecc
