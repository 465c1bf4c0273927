#ifndef ECC_CLASSIFY_HPP
#define ECC_CLASSIFY_HPP

#include <map>

#include "ecc/catalog.hpp"
#include "ecc/equivalence.hpp"

namespace ecc {

// Known optimal sizes A(n,3) for the small-length chain.
int optimal_size_d3(int n);

struct StepOptions {
  int workers = 1;                // <=1 means run inline
  std::string checkpoint_path;    // empty: no checkpointing
  long long parent_limit = -1;    // testing/interrupt: max parents this run
  bool progress = false;          // one line per 1000 parents to stderr
};

struct StepOutput {
  int child_n = 0;
  int child_min = 0, child_max = 0;
  std::vector<Catalog> children;           // one catalog per child size (ascending; may be empty)
  std::vector<std::vector<long long>> nc;  // [global parent][size - child_min]
  bool complete = true;

  const Catalog& by_size(int m) const;
};

// One lengthening level: all child classes of sizes in [child_min, child_max]
// generated from the parent catalogs (same length, ascending size), with
// canonical-augmentation isomorph rejection.  For the d = 4 pipeline levels
// (child length 10..13) the balance and subcode-count filters are applied to
// the children before canonicalization.
StepOutput classify_step(const std::vector<const Catalog*>& parents, int d, bool even_chain,
                         int child_min, int child_max, const StepOptions& opts);

// Exhaustive baseline classification by clique enumeration over the whole
// word space; intended for the chain bases and as a brute-force oracle at
// small lengths.
std::vector<Catalog> brute_force_classify(int n, int d, int min_size, int max_size, bool even_only);

struct D3ChainResult {
  // per length: catalogs for every generated size (ascending)
  std::map<int, std::vector<Catalog>> levels;
  // per length n in 7..up_to: catalog of (n+1, A(n,3), 4) extension classes
  std::map<int, Catalog> extensions;
  bool complete = true;

  const Catalog& optimal(int n) const;  // the size A(n,3) catalog at length n
};

// Classify optimal one-error-correcting codes up to length up_to_n (<= 11)
// together with their inequivalent extensions.
D3ChainResult classify_chain_d3(int up_to_n, const StepOptions& opts);

struct BootstrapResult {
  std::map<int, std::vector<Catalog>> levels;  // even-distance (l, M, 4) catalogs
  Catalog full;                                // all even-distance (9,16,4) classes
  Catalog filtered;                            // survivors of balance + subcode-count (t=4)
  long long thm4_rejects = 0;
  bool complete = true;
};

// The (9,16,4) bootstrap: even-distance codes classified iteratively from
// length 5 upwards without subcode-size assumptions.
BootstrapResult classify_bootstrap(const StepOptions& opts);

// One pipeline level (l, 2^{l-5}, 4) -> (l+1, 2^{l-4}, 4), 9 <= l <= 13.
StepOutput pipeline_step(const Catalog& parents, const StepOptions& opts);

// All inequivalent (n-1, M, d-1) classes obtained by puncturing catalog
// members in every coordinate.
Catalog puncture_classify(const Catalog& cat, const StepOptions& opts);

// All inequivalent one-coordinate extensions raising d from 3 to 4.
Catalog extensions_of(const Catalog& cat);

// Attrition of the Table-style filters on a (9,16,4) catalog.
Catalog filter_bootstrap_output(const Catalog& cat, long long* thm4_rejects);

}  // namespace ecc

#endif
