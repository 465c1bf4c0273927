#ifndef ECC_SPECTRAL_HPP
#define ECC_SPECTRAL_HPP

#include <cstdint>
#include <numeric>

#include "ecc/code.hpp"

namespace ecc {

// Exact rational with 64-bit numerator/denominator, always reduced, den > 0.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n, std::int64_t d = 1);
  bool operator==(const Rat&) const = default;
  bool is_integer() const { return den == 1; }
};

Rat rat_add(Rat a, Rat b);
Rat rat_sub(Rat a, Rat b);
Rat rat_mul(Rat a, Rat b);
std::string to_string(const Rat& r);

// Krawtchouk polynomial K_k(i) over F_2^n: sum_j (-1)^j C(i,j) C(n-i,k-j).
// Exact for all 0 <= k,i <= n <= 64.
std::int64_t krawtchouk(int n, int k, int i);

// alpha(i) = (n-2i-2+(-1)^i)(n-2i+2+(-1)^i); for n = 1 (mod 4) it vanishes
// exactly at the four middle points and is positive elsewhere.
std::int64_t alpha(int n, int i);

// A_i = (1/M) #{ordered pairs at distance i}; pair_count[i] = M * A_i.
struct DistanceSpectrum {
  int n = 0;
  std::int64_t m = 0;  // code size
  std::vector<std::int64_t> pair_count;

  Rat a(int i) const { return Rat(pair_count[i], m); }
};

struct TransformedSpectrum {
  int n = 0;
  std::int64_t m = 0;
  std::vector<Rat> aprime;  // A'_0 .. A'_n
};

DistanceSpectrum distance_distribution(const Code& c);

// M A'_k = sum_i A_i K_k(i); exact rationals.
TransformedSpectrum macwilliams(const DistanceSpectrum& s);

// Inverse relation 2^n A_k = M sum_i A'_i K_k(i); used for round-trip checks.
DistanceSpectrum macwilliams_inverse(const TransformedSpectrum& t);

struct OaStrength {
  int t = 0;
  std::int64_t lambda = 0;
};

// Largest t with A'_1 = ... = A'_t = 0 (Delsarte), cross-checked against the
// direct column-count definition of an orthogonal array.
OaStrength oa_strength(const Code& c);

// Direct check that every t-coordinate pattern selects exactly M/2^t words.
bool oa_has_strength(const Code& c, int t);

bool even_distance_check(const Code& c);

// Weight-w counts of C translated by x, for w = 0..3.
struct TranslateCounts {
  int f0 = 0, f1 = 0, f2 = 0, f3 = 0;
};
TranslateCounts low_weight_counts(const Code& c, bits_t x);

// Subcode-count conditions for t-times-shortened (13,256,4) codes, applied as
// a universal condition over all translates: for every x of the code's weight
// parity (5-t) f0 + f2 >= 5-t must hold, and for every x of the opposite
// parity (5-t) f1 + f3 <= (t^2-11t+44)/2.
bool subcode_count_filter(const Code& c, int t);

// Orthogonal-array balance at the target strength: every pattern on every
// `strength`-subset of coordinates selects exactly M/2^strength codewords.
bool balance_filter(const Code& c, int target_strength);

// Upper bound on M from the alpha-combination in the proof of the main
// spectral theorem: M <= 2^n (n-3+2A_{n-1}) / (2 alpha(0)).
Rat spectral_size_bound(const DistanceSpectrum& s);

}  // namespace ecc

#endif
