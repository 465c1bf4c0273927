#ifndef ECC_CATALOG_HPP
#define ECC_CATALOG_HPP

#include <iosfwd>
#include <string>

#include "ecc/code.hpp"

namespace ecc {

struct ClassRecord {
  Code rep;
  unsigned long long aut_order = 0;  // 0 = not recorded
  long long parent_id = -1;
  long long nc = -1;  // generated-children count of the parent, for validation
  std::string flags;  // csv of passed filters
};

// A catalog of pairwise-inequivalent class representatives for one parameter
// triple (n, M, d).
struct Catalog {
  int n = 0;
  long long m = 0;
  int d = 0;
  std::vector<ClassRecord> classes;

  long long size() const { return (long long)classes.size(); }
};

// Text format, bit-exact:
//   %ecc-catalog 1
//   n=<int> M=<int> d=<int> count=<int>
//   code <w_1> ... <w_M>          (binary strings, coordinate 1 leftmost,
//                                  words ascending)
//   aut <order>                   (optional, directly after its code line)
//   meta parent=<id> nc=<int> flags=<csv>   (optional)
void write_catalog(std::ostream& os, const Catalog& cat);
void write_catalog_file(const std::string& path, const Catalog& cat);
Catalog read_catalog(std::istream& is);
Catalog read_catalog_file(const std::string& path);

}  // namespace ecc

#endif
