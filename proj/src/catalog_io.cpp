#include <fstream>
#include <sstream>

#include "ecc/catalog.hpp"

namespace ecc {

namespace {

std::string word_str(bits_t w, int n) {
  std::string s(n, '0');
  for (int c = 0; c < n; ++c)
    if ((w >> (n - 1 - c)) & 1) s[c] = '1';
  return s;
}

long long parse_ll(const std::string& s, const char* what) {
  size_t pos = 0;
  long long v;
  try {
    v = std::stoll(s, &pos);
  } catch (...) {
    throw std::runtime_error(std::string("catalog: bad integer in ") + what);
  }
  if (pos != s.size()) throw std::runtime_error(std::string("catalog: bad integer in ") + what);
  return v;
}

std::string expect_kv(const std::string& tok, const std::string& key) {
  if (tok.rfind(key + "=", 0) != 0) throw std::runtime_error("catalog: expected " + key + "=");
  return tok.substr(key.size() + 1);
}

}  // namespace

void write_catalog(std::ostream& os, const Catalog& cat) {
  os << "%ecc-catalog 1\n";
  os << "n=" << cat.n << " M=" << cat.m << " d=" << cat.d << " count=" << cat.classes.size() << "\n";
  for (const auto& rec : cat.classes) {
    os << "code";
    for (bits_t w : rec.rep.words()) os << ' ' << word_str(w, cat.n);
    os << "\n";
    if (rec.aut_order) os << "aut " << rec.aut_order << "\n";
    if (rec.parent_id >= 0 || rec.nc >= 0 || !rec.flags.empty()) {
      os << "meta parent=" << rec.parent_id << " nc=" << rec.nc << " flags=" << rec.flags << "\n";
    }
  }
}

void write_catalog_file(const std::string& path, const Catalog& cat) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("catalog: cannot open " + path + " for writing");
  write_catalog(os, cat);
  if (!os) throw std::runtime_error("catalog: write failed for " + path);
}

Catalog read_catalog(std::istream& is) {
  Catalog cat;
  std::string line;
  if (!std::getline(is, line) || line != "%ecc-catalog 1") throw std::runtime_error("catalog: bad magic line");
  if (!std::getline(is, line)) throw std::runtime_error("catalog: missing header");
  std::istringstream hs(line);
  std::string tok;
  hs >> tok;
  cat.n = int(parse_ll(expect_kv(tok, "n"), "n"));
  hs >> tok;
  cat.m = parse_ll(expect_kv(tok, "M"), "M");
  hs >> tok;
  cat.d = int(parse_ll(expect_kv(tok, "d"), "d"));
  hs >> tok;
  long long count = parse_ll(expect_kv(tok, "count"), "count");
  if (cat.n < 1 || cat.n > kMaxLength) throw std::runtime_error("catalog: bad length");

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ls >> tok;
    if (tok == "code") {
      std::vector<bits_t> ws;
      std::string w;
      while (ls >> w) {
        if (int(w.size()) != cat.n) throw std::runtime_error("catalog: word length mismatch");
        bits_t b = 0;
        for (char ch : w) {
          if (ch != '0' && ch != '1') throw std::runtime_error("catalog: bad word character");
          b = (b << 1) | bits_t(ch == '1');
        }
        if (!ws.empty() && b <= ws.back()) throw std::runtime_error("catalog: words not strictly ascending");
        ws.push_back(b);
      }
      if ((long long)ws.size() != cat.m) throw std::runtime_error("catalog: record size mismatch");
      ClassRecord rec;
      rec.rep = Code(cat.n, std::move(ws), cat.d);
      cat.classes.push_back(std::move(rec));
    } else if (tok == "aut") {
      if (cat.classes.empty()) throw std::runtime_error("catalog: aut before any code");
      std::string v;
      ls >> v;
      cat.classes.back().aut_order = (unsigned long long)parse_ll(v, "aut");
    } else if (tok == "meta") {
      if (cat.classes.empty()) throw std::runtime_error("catalog: meta before any code");
      auto& rec = cat.classes.back();
      std::string kv;
      while (ls >> kv) {
        if (kv.rfind("parent=", 0) == 0)
          rec.parent_id = parse_ll(kv.substr(7), "parent");
        else if (kv.rfind("nc=", 0) == 0)
          rec.nc = parse_ll(kv.substr(3), "nc");
        else if (kv.rfind("flags=", 0) == 0)
          rec.flags = kv.substr(6);
        else
          throw std::runtime_error("catalog: unknown meta key " + kv);
      }
    } else {
      throw std::runtime_error("catalog: unknown record " + tok);
    }
  }
  if ((long long)cat.classes.size() != count) throw std::runtime_error("catalog: count mismatch");
  return cat;
}

Catalog read_catalog_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("catalog: cannot open " + path);
  return read_catalog(is);
}

}  // namespace ecc
