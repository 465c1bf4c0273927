#ifndef ECC_CLIQUE_HPP
#define ECC_CLIQUE_HPP

#include <functional>

#include "ecc/code.hpp"

namespace ecc {

// Dense undirected graph on bitset rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int nv) : nv_(nv), stride_((nv + 63) / 64), adj_(size_t(nv) * stride_, 0) {}

  int size() const { return nv_; }
  int stride() const { return stride_; }
  const std::uint64_t* row(int v) const { return adj_.data() + size_t(v) * stride_; }

  void add_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("graph: self loop");
    adj_[size_t(a) * stride_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
    adj_[size_t(b) * stride_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
  }
  bool edge(int a, int b) const { return (adj_[size_t(a) * stride_ + (b >> 6)] >> (b & 63)) & 1; }
  int degree(int v) const {
    int d = 0;
    for (int w = 0; w < stride_; ++w) d += std::popcount(adj_[size_t(v) * stride_ + w]);
    return d;
  }

 private:
  int nv_ = 0;
  int stride_ = 0;
  std::vector<std::uint64_t> adj_;
};

// Aborts enumeration when the callback returns false (resource-limit path);
// the functions report whether the search ran to completion.
using CliqueSink = std::function<bool(const std::vector<int>&)>;

// All cliques of size exactly k, each emitted once with ascending vertex
// indices, in deterministic lexicographic order.  k = 0 yields one empty
// clique.  Returns false iff the sink aborted the search.
bool cliques_of_size(const Graph& g, int k, const CliqueSink& sink);

// All cliques with size in [kmin, kmax], same conventions.
bool cliques_in_range(const Graph& g, int kmin, int kmax, const CliqueSink& sink);

std::vector<std::vector<int>> collect_cliques(const Graph& g, int k);

// Candidate words for lengthening an (n, M, d) code by one coordinate: words
// at distance >= d-1 from every codeword.  When even_chain is set (the d = 4
// even-distance pipeline) only words of weight parity opposite to the
// codewords are kept, so the lengthened code stays even-distance.
std::vector<bits_t> lengthening_candidates(const Code& c, int d, bool even_chain);

struct CompatibilityGraph {
  std::vector<bits_t> candidates;  // vertex -> word
  Graph graph;                     // edges at mutual distance >= d
};

// Compatibility graph of an even-distance code with d = 4 (the spec's
// definition); for a (13,256,4) base this has exactly 3M = 768 vertices.
CompatibilityGraph compatibility_graph(const Code& c);

CompatibilityGraph compatibility_graph_general(const Code& c, int d, bool even_chain);

// All even-distance one-step lengthenings of an (n-1, 2^{n-6}, 4) code with
// n-1 in 10..14, via the prefix-block decomposition: candidates are split by
// the first n-1-10 old coordinates, cliques of size 32 are found per block,
// and block cliques are combined through a meta-graph.  New coordinate is
// inserted first with value 0 on the old codewords.
std::vector<Code> lengthen_decomposed(const Code& c);

// Direct route: one clique search for all cliques of size `added` in the
// compatibility graph; same output convention as lengthen_decomposed.
std::vector<Code> lengthen_direct(const Code& c, int added);

}  // namespace ecc

#endif
