#ifndef ECC_WORD_HPP
#define ECC_WORD_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecc {

// A binary word of length n <= 64, packed into a uint64_t.
// Coordinate i (1-based, leftmost in textual renderings) lives in bit (n - i),
// so the numeric order of the packed values equals the textual order of the
// strings.  Internally most code works with 0-based coordinate c at bit
// (n - 1 - c).
using bits_t = std::uint64_t;

constexpr int kMaxLength = 64;

inline bits_t word_mask(int n) {
  return n >= 64 ? ~bits_t{0} : (bits_t{1} << n) - 1;
}

inline int weight(bits_t w) { return std::popcount(w); }

inline int distance_bits(bits_t a, bits_t b) { return std::popcount(a ^ b); }

inline int get_coord(bits_t w, int n, int c) {  // c is 0-based
  return int((w >> (n - 1 - c)) & 1);
}

inline bits_t set_coord(bits_t w, int n, int c, int v) {
  bits_t m = bits_t{1} << (n - 1 - c);
  return v ? (w | m) : (w & ~m);
}

// e_i: the weight-one word with a 1 in 0-based coordinate c.
inline bits_t unit_bits(int n, int c) { return bits_t{1} << (n - 1 - c); }

inline bits_t all_ones(int n) { return word_mask(n); }

struct Word {
  int length = 0;
  bits_t bits = 0;

  Word() = default;
  Word(int n, bits_t b) : length(n), bits(b & word_mask(n)) {
    if (n < 1 || n > kMaxLength) throw std::invalid_argument("word length out of range");
  }

  int get(int coord1) const {  // 1-based per the catalog convention
    if (coord1 < 1 || coord1 > length) throw std::out_of_range("coordinate out of range");
    return get_coord(bits, length, coord1 - 1);
  }
  int weight() const { return std::popcount(bits); }
  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;
};

inline int distance(const Word& a, const Word& b) {
  if (a.length != b.length) throw std::invalid_argument("distance: length mismatch");
  return distance_bits(a.bits, b.bits);
}

inline std::string to_string(const Word& w) {
  std::string s(w.length, '0');
  for (int c = 0; c < w.length; ++c)
    if (get_coord(w.bits, w.length, c)) s[c] = '1';
  return s;
}

inline Word word_from_string(const std::string& s) {
  if (s.empty() || s.size() > kMaxLength) throw std::invalid_argument("bad word string length");
  bits_t b = 0;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bad character in word string");
    b = (b << 1) | bits_t(ch == '1');
  }
  return Word(int(s.size()), b);
}

// Permutation of 0-based coordinates: coordinate c of the input becomes
// coordinate p[c] of the output.
using Perm = std::vector<int>;

inline bool is_permutation_of_coords(const Perm& p, int n) {
  if (int(p.size()) != n) return false;
  std::uint64_t seen = 0;
  for (int v : p) {
    if (v < 0 || v >= n) return false;
    std::uint64_t m = std::uint64_t{1} << v;
    if (seen & m) return false;
    seen |= m;
  }
  return true;
}

inline bits_t apply_perm_bits(bits_t w, int n, const Perm& p) {
  bits_t r = 0;
  while (w) {
    int bit = std::countr_zero(w);
    w &= w - 1;
    int c = n - 1 - bit;
    r |= unit_bits(n, p[c]);
  }
  return r;
}

inline Perm inverse_perm(const Perm& p) {
  Perm q(p.size());
  for (int i = 0; i < int(p.size()); ++i) q[p[i]] = i;
  return q;
}

}  // namespace ecc

#endif
