#ifndef ECC_EQUIVALENCE_HPP
#define ECC_EQUIVALENCE_HPP

#include <optional>

#include "ecc/code.hpp"

namespace ecc {

// An automorphism/equivalence map x -> p(x + v).
struct CodeAut {
  bits_t v = 0;
  Perm p;
};

struct CanonicalForm {
  std::vector<std::uint8_t> bytes;
  bool operator==(const CanonicalForm&) const = default;
  bool operator<(const CanonicalForm& o) const { return bytes < o.bytes; }
};

std::uint64_t form_hash(const CanonicalForm& f);

struct AutInfo {
  unsigned long long order = 1;
  std::vector<CodeAut> generators;
};

// Everything one canonicalization yields; classification reuses the labels
// and orbits of the coordinate-value vertices for canonical augmentation.
struct CanonicalResult {
  CanonicalForm form;
  AutInfo aut;
  std::vector<int> cv_label;  // canonical label of vertex (coord c, value b) at index 2c+b
  std::vector<int> cv_orbit;  // orbit id of the same vertices
};

// Counts, per codeword (aligned with c.words()), of quadruples {a,b,c,d} that
// agree outside six coordinates where they form {000000,111100,110011,001111}.
std::vector<long long> quadruple_invariant(const Code& c);

CanonicalResult canonical_form(const Code& c);

bool are_equivalent(const Code& a, const Code& b);

// A witnessing (v, p) with translate_permute(a, v, p) == b, when equivalent.
std::optional<CodeAut> equivalence_witness(const Code& a, const Code& b);

// Canonical-augmentation acceptance: true iff the coordinate-value vertex
// (new_coord, old_value) lies in the automorphism orbit of the minimum-label
// vertex among valid augmentations (those whose kept half is a majority).
bool augmentation_accept(const Code& c, int new_coord, int old_value);

// Shared with the classifier: the acceptance decision on a precomputed
// canonicalization.
bool augmentation_accept_on(const Code& c, const CanonicalResult& cr, int new_coord, int old_value);

}  // namespace ecc

#endif
