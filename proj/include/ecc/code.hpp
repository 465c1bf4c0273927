#ifndef ECC_CODE_HPP
#define ECC_CODE_HPP

#include <algorithm>
#include <optional>
#include <span>

#include "ecc/word.hpp"

namespace ecc {

// A duplicate-free set of equal-length words, stored ascending.  The declared
// minimum distance d is carried along but never silently trusted; call
// verify_distance() to check it.
class Code {
 public:
  Code() = default;

  Code(int n, std::vector<bits_t> words, int declared_d = 0) : n_(n), d_(declared_d), words_(std::move(words)) {
    if (n < 1 || n > kMaxLength) throw std::invalid_argument("code length out of range");
    bits_t mask = word_mask(n);
    for (bits_t w : words_)
      if (w & ~mask) throw std::invalid_argument("codeword exceeds length");
    std::sort(words_.begin(), words_.end());
    if (std::adjacent_find(words_.begin(), words_.end()) != words_.end())
      throw std::invalid_argument("duplicate codeword");
  }

  int n() const { return n_; }
  int size() const { return int(words_.size()); }
  int declared_distance() const { return d_; }
  void set_declared_distance(int d) { d_ = d; }
  const std::vector<bits_t>& words() const { return words_; }
  bits_t word(int i) const { return words_[i]; }
  bool contains(bits_t w) const { return std::binary_search(words_.begin(), words_.end(), w); }

  bool operator==(const Code& o) const { return n_ == o.n_ && words_ == o.words_; }

  // Smallest pairwise distance; n+1 for codes with fewer than two words.
  int min_distance() const {
    int best = n_ + 1;
    for (size_t i = 0; i < words_.size(); ++i)
      for (size_t j = i + 1; j < words_.size(); ++j)
        best = std::min(best, distance_bits(words_[i], words_[j]));
    return best;
  }

  bool verify_distance() const { return d_ == 0 || min_distance() >= d_; }

  // Distance from an arbitrary word to the code (n+1 if empty).
  int distance_to(bits_t w) const {
    int best = n_ + 1;
    for (bits_t c : words_) best = std::min(best, distance_bits(c, w));
    return best;
  }

 private:
  int n_ = 1;
  int d_ = 0;
  std::vector<bits_t> words_;
};

// v + C followed by coordinate permutation; parameters (n, M, d) preserved.
inline Code translate_permute(const Code& c, bits_t v, const Perm& p) {
  if (!is_permutation_of_coords(p, c.n())) throw std::invalid_argument("translate_permute: bad permutation");
  if (v & ~word_mask(c.n())) throw std::invalid_argument("translate_permute: translation exceeds length");
  std::vector<bits_t> ws;
  ws.reserve(c.size());
  for (bits_t w : c.words()) ws.push_back(apply_perm_bits(w ^ v, c.n(), p));
  return Code(c.n(), std::move(ws), c.declared_distance());
}

inline Code translate(const Code& c, bits_t v) {
  std::vector<bits_t> ws;
  ws.reserve(c.size());
  for (bits_t w : c.words()) ws.push_back(w ^ v);
  return Code(c.n(), std::move(ws), c.declared_distance());
}

inline bits_t delete_coord_bits(bits_t w, int n, int c) {
  int bit = n - 1 - c;  // position of coordinate c
  bits_t low = w & ((bits_t{1} << bit) - 1);
  bits_t high = (w >> (bit + 1)) << bit;
  return high | low;
}

// Keep codewords with the given value in 0-based coordinate c, then delete
// that coordinate.  The result may be empty.
inline Code shorten(const Code& code, int c, int value) {
  if (c < 0 || c >= code.n()) throw std::invalid_argument("shorten: coordinate out of range");
  if (code.n() == 1) throw std::invalid_argument("shorten: length-1 code");
  std::vector<bits_t> ws;
  for (bits_t w : code.words())
    if (get_coord(w, code.n(), c) == value) ws.push_back(delete_coord_bits(w, code.n(), c));
  return Code(code.n() - 1, std::move(ws), code.declared_distance());
}

// Delete coordinate c from every codeword.  Distinct codewords may collide
// when d(C) = 1; the number of merged pairs is reported through `merged`.
inline Code puncture(const Code& code, int c, int* merged = nullptr) {
  if (c < 0 || c >= code.n()) throw std::invalid_argument("puncture: coordinate out of range");
  if (code.n() == 1) throw std::invalid_argument("puncture: length-1 code");
  std::vector<bits_t> ws;
  ws.reserve(code.size());
  for (bits_t w : code.words()) ws.push_back(delete_coord_bits(w, code.n(), c));
  std::sort(ws.begin(), ws.end());
  size_t before = ws.size();
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  if (merged) *merged = int(before - ws.size());
  int d = code.declared_distance() > 1 ? code.declared_distance() - 1 : 0;
  return Code(code.n() - 1, std::move(ws), d);
}

// Append an overall parity coordinate (position n+1); every resulting word has
// even weight, and an odd declared distance increases by one.
inline Code extend_parity(const Code& code) {
  if (code.n() >= kMaxLength) throw std::invalid_argument("extend_parity: length cap");
  std::vector<bits_t> ws;
  ws.reserve(code.size());
  for (bits_t w : code.words()) ws.push_back((w << 1) | bits_t(std::popcount(w) & 1));
  int d = code.declared_distance();
  if (d % 2 == 1) ++d;
  return Code(code.n() + 1, std::move(ws), d);
}

// Inverse of shorten: old codewords get `value` in a new coordinate inserted
// at 0-based position c, the added words get the complementary value.
inline Code lengthen(const Code& code, int c, int value, std::span<const bits_t> added) {
  if (code.n() >= kMaxLength) throw std::invalid_argument("lengthen: length cap");
  int n1 = code.n() + 1;
  if (c < 0 || c >= n1) throw std::invalid_argument("lengthen: coordinate out of range");
  int bit = n1 - 1 - c;
  bits_t lowmask = (bits_t{1} << bit) - 1;
  auto insert = [&](bits_t w, int v) {
    return ((w & ~lowmask) << 1) | (bits_t(v) << bit) | (w & lowmask);
  };
  std::vector<bits_t> ws;
  ws.reserve(code.size() + added.size());
  for (bits_t w : code.words()) ws.push_back(insert(w, value));
  for (bits_t w : added) ws.push_back(insert(w, 1 - value));
  return Code(n1, std::move(ws), code.declared_distance());
}

}  // namespace ecc

#endif
