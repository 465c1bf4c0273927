#include "ecc/spectral.hpp"

#include <array>
#include <cstdlib>

namespace ecc {

namespace {

using i128 = __int128;

std::int64_t check64(i128 v, const char* what) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) throw std::overflow_error(what);
  return std::int64_t(v);
}

const std::uint64_t* binomial_table() {
  static std::array<std::uint64_t, 65 * 65> tbl = [] {
    std::array<std::uint64_t, 65 * 65> t{};
    for (int n = 0; n <= 64; ++n) {
      t[n * 65] = 1;
      for (int k = 1; k <= n; ++k) t[n * 65 + k] = t[(n - 1) * 65 + k - 1] + (k <= n - 1 ? t[(n - 1) * 65 + k] : 0);
    }
    return t;
  }();
  return tbl.data();
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  return binomial_table()[n * 65 + k];
}

}  // namespace

Rat::Rat(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rat rat_add(Rat a, Rat b) { return Rat(check64(i128(a.num) * b.den + i128(b.num) * a.den, "rat_add"), check64(i128(a.den) * b.den, "rat_add")); }
Rat rat_sub(Rat a, Rat b) { return rat_add(a, Rat(-b.num, b.den)); }
Rat rat_mul(Rat a, Rat b) { return Rat(check64(i128(a.num) * b.num, "rat_mul"), check64(i128(a.den) * b.den, "rat_mul")); }

std::string to_string(const Rat& r) {
  std::string s = std::to_string(r.num);
  if (r.den != 1) s += "/" + std::to_string(r.den);
  return s;
}

std::int64_t krawtchouk(int n, int k, int i) {
  if (n < 0 || n > 64 || k < 0 || k > n || i < 0 || i > n) throw std::invalid_argument("krawtchouk: arguments out of range");
  i128 acc = 0;
  for (int j = 0; j <= k; ++j) {
    i128 term = i128(binom(i, j)) * binom(n - i, k - j);
    acc += (j & 1) ? -term : term;
  }
  return check64(acc, "krawtchouk overflow");
}

std::int64_t alpha(int n, int i) {
  std::int64_t s = (i & 1) ? -1 : 1;
  return (std::int64_t(n) - 2 * i - 2 + s) * (std::int64_t(n) - 2 * i + 2 + s);
}

DistanceSpectrum distance_distribution(const Code& c) {
  if (c.size() == 0) throw std::invalid_argument("distance_distribution: empty code");
  DistanceSpectrum s;
  s.n = c.n();
  s.m = c.size();
  s.pair_count.assign(c.n() + 1, 0);
  const auto& ws = c.words();
  for (size_t i = 0; i < ws.size(); ++i) {
    ++s.pair_count[0];
    for (size_t j = i + 1; j < ws.size(); ++j) s.pair_count[distance_bits(ws[i], ws[j])] += 2;
  }
  return s;
}

TransformedSpectrum macwilliams(const DistanceSpectrum& s) {
  TransformedSpectrum t;
  t.n = s.n;
  t.m = s.m;
  t.aprime.resize(s.n + 1);
  i128 m2 = i128(s.m) * s.m;
  for (int k = 0; k <= s.n; ++k) {
    i128 acc = 0;
    for (int i = 0; i <= s.n; ++i)
      if (s.pair_count[i]) acc += i128(s.pair_count[i]) * krawtchouk(s.n, k, i);
    // A'_k = acc / M^2
    i128 g = acc < 0 ? -acc : acc;
    i128 d = m2;
    // reduce in 128 bits before narrowing
    while (g && d) {
      i128 r = g % d;
      g = d;
      d = r;
    }
    i128 gg = g ? g : 1;
    t.aprime[k] = Rat(check64(acc / gg, "macwilliams"), check64(m2 / gg, "macwilliams"));
  }
  return t;
}

DistanceSpectrum macwilliams_inverse(const TransformedSpectrum& t) {
  DistanceSpectrum s;
  s.n = t.n;
  s.m = t.m;
  s.pair_count.assign(t.n + 1, 0);
  // A_k = (M / 2^n) sum_i A'_i K_k(i); pair_count[k] = M A_k.
  for (int k = 0; k <= t.n; ++k) {
    Rat acc(0);
    for (int i = 0; i <= t.n; ++i) acc = rat_add(acc, rat_mul(t.aprime[i], Rat(krawtchouk(t.n, k, i))));
    acc = rat_mul(acc, Rat(i128(t.m) * t.m > i128(INT64_MAX) ? throw std::overflow_error("macwilliams_inverse") : t.m * t.m, 1));
    // divide by 2^n
    for (int b = 0; b < t.n; ++b) acc = rat_mul(acc, Rat(1, 2));
    if (!acc.is_integer()) throw std::domain_error("macwilliams_inverse: non-integer pair count");
    s.pair_count[k] = acc.num;
  }
  return s;
}

bool oa_has_strength(const Code& c, int t) {
  if (t == 0) return true;
  if (t > c.n()) return false;
  std::int64_t m = c.size();
  if (t >= 63 || m % (std::int64_t(1) << t) != 0) return false;
  std::int64_t lam = m >> t;
  // iterate over all t-subsets of coordinates
  std::vector<int> idx(t);
  for (int i = 0; i < t; ++i) idx[i] = i;
  std::vector<std::int64_t> counts(size_t(1) << t);
  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    for (bits_t w : c.words()) {
      std::uint64_t pat = 0;
      for (int i = 0; i < t; ++i) pat = (pat << 1) | std::uint64_t(get_coord(w, c.n(), idx[i]));
      ++counts[pat];
    }
    for (std::int64_t cnt : counts)
      if (cnt != lam) return false;
    int i = t - 1;
    while (i >= 0 && idx[i] == c.n() - t + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
  return true;
}

OaStrength oa_strength(const Code& c) {
  if (c.size() == 0) throw std::invalid_argument("oa_strength: empty code");
  auto tr = macwilliams(distance_distribution(c));
  int t = 0;
  while (t < c.n() && tr.aprime[t + 1].num == 0) ++t;
  // cross-check against the direct definition
  if (!oa_has_strength(c, t)) throw std::logic_error("oa_strength: transform and direct count disagree");
  if (t < c.n() && oa_has_strength(c, t + 1)) throw std::logic_error("oa_strength: transform and direct count disagree");
  OaStrength r;
  r.t = t;
  r.lambda = c.size() >> t;
  if (r.lambda << t != c.size()) throw std::logic_error("oa_strength: size not divisible by 2^t");
  return r;
}

bool even_distance_check(const Code& c) {
  if (c.size() <= 1) return true;
  int par = weight(c.word(0)) & 1;
  for (bits_t w : c.words())
    if ((weight(w) & 1) != par) return false;
  return true;
}

TranslateCounts low_weight_counts(const Code& c, bits_t x) {
  TranslateCounts f;
  for (bits_t w : c.words()) {
    switch (distance_bits(w, x)) {
      case 0: ++f.f0; break;
      case 1: ++f.f1; break;
      case 2: ++f.f2; break;
      case 3: ++f.f3; break;
      default: break;
    }
  }
  return f;
}

bool subcode_count_filter(const Code& c, int t) {
  if (t < 0 || t > 4) throw std::invalid_argument("subcode_count_filter: t out of range");
  if (c.n() != 13 - t) throw std::invalid_argument("subcode_count_filter: length must be 13-t");
  if (!even_distance_check(c)) throw std::invalid_argument("subcode_count_filter: even-distance code required");
  if (c.size() == 0) return false;
  const int n = c.n();
  const int par = weight(c.word(0)) & 1;
  const std::int64_t a = 5 - t;
  const std::int64_t odd_rhs = (std::int64_t(t) * t - 11 * t + 44) / 2;

  // Scatter counts of codewords at distance 0..3 from every x, packed in
  // 16-bit lanes of one uint64 per x.
  const size_t space = size_t(1) << n;
  std::vector<std::uint64_t> acc(space, 0);
  std::array<std::vector<bits_t>, 4> masks;
  masks[0].push_back(0);
  for (int w = 1; w <= 3; ++w)
    for (bits_t m = 0; m < (bits_t{1} << n); ++m)
      if (std::popcount(m) == w) masks[w].push_back(m);
  for (bits_t cw : c.words())
    for (int w = 0; w <= 3; ++w) {
      std::uint64_t lane = std::uint64_t{1} << (16 * w);
      for (bits_t m : masks[w]) acc[cw ^ m] += lane;
    }
  for (size_t x = 0; x < space; ++x) {
    std::uint64_t v = acc[x];
    std::int64_t f0 = v & 0xffff, f1 = (v >> 16) & 0xffff, f2 = (v >> 32) & 0xffff, f3 = (v >> 48) & 0xffff;
    if ((std::popcount(std::uint64_t(x)) & 1) == par) {
      if (a * f0 + f2 < a) return false;
    } else {
      if (a * f1 + f3 > odd_rhs) return false;
    }
  }
  return true;
}

bool balance_filter(const Code& c, int target_strength) {
  if (target_strength <= 0) return true;
  return oa_has_strength(c, target_strength);
}

Rat spectral_size_bound(const DistanceSpectrum& s) {
  if (s.n < 1 || s.n > 62) throw std::invalid_argument("spectral_size_bound: length out of range");
  std::int64_t a0 = alpha(s.n, 0);
  Rat an1 = s.a(s.n - 1);
  Rat numer = rat_add(Rat(s.n - 3), rat_mul(Rat(2), an1));
  Rat pow2(std::int64_t(1) << s.n);
  return rat_mul(pow2, rat_mul(numer, Rat(1, 2 * a0)));
}

}  // namespace ecc
