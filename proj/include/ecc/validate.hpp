#ifndef ECC_VALIDATE_HPP
#define ECC_VALIDATE_HPP

#include <string>

#include "ecc/catalog.hpp"

namespace ecc {

// Decimal string of an exact 128-bit sum; the orbit-stabilizer totals exceed
// 64 bits at length 14.
struct BigCount {
  unsigned __int128 v = 0;
  void add(unsigned __int128 x);
  std::string str() const;
  bool operator==(const BigCount&) const = default;
};

// Orbit-stabilizer total of labeled codes: sum over classes of 2^n n!/|Aut|.
BigCount labeled_count(const Catalog& cat);

struct DoubleCountReport {
  BigCount parent_side;         // 2n * sum 2^(n-1)(n-1)! N_C / |Aut(C)|
  BigCount child_side;          // sum v(X) 2^n n! / |Aut(X)|
  bool balanced_children = true;  // v(X) = 2n for every child
  BigCount eq6;                 // plain labeled child count (paper's left side)
  BigCount eq7;                 // sum 2^(n-1)(n-1)! N_C / |Aut(C)|
  bool pass = false;
  std::string detail;           // one line per mismatch contributor
};

// Double-counting check of one classification step.  Children must carry
// parent ids and the per-parent nc vector is passed separately (indexed like
// the parent catalog); children of other parents counted under nc as well.
// The check weights each child class by its number of valid augmentations
// v(X), which equals 2n exactly when every coordinate splits in half; in that
// case it coincides with the paper's eq6 = eq7 comparison.
DoubleCountReport double_count_check(const Catalog& parents, const Catalog& children,
                                     const std::vector<long long>& parent_nc);

// Validation of catalog internal invariants: representative distances, sizes,
// declared flags, pairwise inequivalence on demand.
struct CatalogAudit {
  bool ok = true;
  std::string detail;
};
CatalogAudit audit_catalog(const Catalog& cat, bool check_inequivalent);

}  // namespace ecc

#endif
