#include "ecc/classify.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "ecc/clique.hpp"
#include "ecc/spectral.hpp"

namespace ecc {

int optimal_size_d3(int n) {
  switch (n) {
    case 3: return 2;
    case 4: return 2;
    case 5: return 4;
    case 6: return 8;
    case 7: return 16;
    case 8: return 20;
    case 9: return 40;
    case 10: return 72;
    case 11: return 144;
    default: throw std::invalid_argument("optimal_size_d3: length out of range");
  }
}

const Catalog& StepOutput::by_size(int m) const {
  if (m < child_min || m > child_max) throw std::out_of_range("StepOutput::by_size");
  return children[m - child_min];
}

namespace {

struct ChildRec {
  Code code;
  unsigned long long aut_order = 0;
  CanonicalForm form;
};

struct ParentResult {
  std::vector<long long> nc;
  std::vector<ChildRec> accepted;
};

struct StepContext {
  int d = 4;
  bool even_chain = true;
  int parent_n = 0;
  int child_n = 0;
  int child_min = 0, child_max = 0;
  bool pipeline_filters = false;
  std::vector<const Code*> parents;
};

bool child_passes_filters(const StepContext& ctx, const Code& child) {
  if (!ctx.pipeline_filters) return true;
  const int n = child.n();
  if (n >= 10 && n <= 13) {
    if (!balance_filter(child, n - 9)) return false;
    if (!subcode_count_filter(child, 13 - n)) return false;
  }
  return true;
}

ParentResult process_parent(const StepContext& ctx, const Code& parent) {
  ParentResult res;
  const int sizes = ctx.child_max - ctx.child_min + 1;
  res.nc.assign(sizes, 0);
  const int m0 = parent.size();
  int kmin = std::max(0, ctx.child_min - m0);
  int kmax = std::min(m0, ctx.child_max - m0);
  if (kmin > kmax) return res;

  std::unordered_map<std::uint64_t, std::vector<size_t>> seen;
  std::vector<bits_t> words;
  auto consider = [&](Code child) {
    ++res.nc[child.size() - ctx.child_min];
    if (!child_passes_filters(ctx, child)) return;
    CanonicalResult cr = canonical_form(child);
    if (!augmentation_accept_on(child, cr, 0, 0)) return;
    std::uint64_t h = form_hash(cr.form);
    auto& bucket = seen[h];
    for (size_t idx : bucket)
      if (res.accepted[idx].form == cr.form) return;  // same-parent duplicate
    bucket.push_back(res.accepted.size());
    res.accepted.push_back(ChildRec{std::move(child), cr.aut.order, std::move(cr.form)});
  };

  // The decomposed search handles the large balanced pipeline levels; the
  // generic clique search covers everything else.
  if (ctx.pipeline_filters && ctx.parent_n >= 10 && kmin == kmax && kmin == m0) {
    for (Code& child : lengthen_decomposed(parent)) consider(std::move(child));
  } else {
    CompatibilityGraph cg = compatibility_graph_general(parent, ctx.d, ctx.even_chain);
    cliques_in_range(cg.graph, kmin, kmax, [&](const std::vector<int>& verts) {
      words.clear();
      for (int v : verts) words.push_back(cg.candidates[v]);
      consider(lengthen(parent, 0, 0, words));
      return true;
    });
  }
  return res;
}

std::string word_str(bits_t w, int n) {
  std::string s(n, '0');
  for (int c = 0; c < n; ++c)
    if ((w >> (n - 1 - c)) & 1) s[c] = '1';
  return s;
}

std::string checkpoint_header(const StepContext& ctx) {
  std::ostringstream hdr;
  hdr << "params n=" << ctx.child_n << " d=" << ctx.d << " cmin=" << ctx.child_min << " cmax=" << ctx.child_max
      << " parents=" << ctx.parents.size();
  return hdr.str();
}

void write_parent_block(std::ostream& os, size_t gid, const ParentResult& r) {
  os << "parent " << gid << "\nnc";
  for (long long v : r.nc) os << ' ' << v;
  os << "\n";
  for (const auto& ch : r.accepted) {
    os << "child";
    for (bits_t w : ch.code.words()) os << ' ' << word_str(w, ch.code.n());
    os << "\naut " << ch.aut_order << "\nform";
    for (std::uint8_t b : ch.form.bytes) os << ' ' << int(b);
    os << "\n";
  }
  os << "done " << gid << "\n";
}

std::vector<ParentResult> read_checkpoint(const std::string& path, const StepContext& ctx) {
  std::vector<ParentResult> out;
  std::ifstream is(path, std::ios::binary);
  if (!is) return out;
  std::string line;
  if (!std::getline(is, line) || line != "%ecc-step-checkpoint 1") return {};
  if (!std::getline(is, line) || line != checkpoint_header(ctx))
    throw std::runtime_error("checkpoint: parameter mismatch with this step");
  ParentResult cur;
  long long cur_gid = -1;
  bool in_block = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "parent") {
      long long gid = -1;
      ls >> gid;
      if (gid != (long long)out.size()) break;
      cur = ParentResult{};
      cur_gid = gid;
      in_block = true;
    } else if (tok == "nc" && in_block) {
      cur.nc.clear();
      long long v;
      while (ls >> v) cur.nc.push_back(v);
    } else if (tok == "child" && in_block) {
      std::string w;
      std::vector<bits_t> ws;
      while (ls >> w) {
        bits_t b = 0;
        for (char c : w) b = (b << 1) | bits_t(c == '1');
        ws.push_back(b);
      }
      ChildRec rec;
      rec.code = Code(ctx.child_n, std::move(ws), ctx.d);
      cur.accepted.push_back(std::move(rec));
    } else if (tok == "aut" && in_block) {
      ls >> cur.accepted.back().aut_order;
    } else if (tok == "form" && in_block) {
      int b;
      while (ls >> b) cur.accepted.back().form.bytes.push_back(std::uint8_t(b));
    } else if (tok == "done" && in_block) {
      long long gid = -1;
      ls >> gid;
      if (gid != cur_gid) break;
      out.push_back(std::move(cur));
      in_block = false;
    } else {
      break;
    }
  }
  return out;
}

StepOutput assemble(const StepContext& ctx, std::vector<ParentResult>& results, bool complete) {
  StepOutput out;
  out.child_n = ctx.child_n;
  out.child_min = ctx.child_min;
  out.child_max = ctx.child_max;
  out.complete = complete;
  const int sizes = ctx.child_max - ctx.child_min + 1;
  out.children.assign(sizes, Catalog{});
  for (int s = 0; s < sizes; ++s) {
    out.children[s].n = ctx.child_n;
    out.children[s].m = ctx.child_min + s;
    out.children[s].d = ctx.d;
  }
  out.nc.resize(results.size());
  std::unordered_map<std::uint64_t, std::vector<std::pair<int, size_t>>> global;
  for (size_t gid = 0; gid < results.size(); ++gid) {
    out.nc[gid] = results[gid].nc;
    for (auto& ch : results[gid].accepted) {
      int s = ch.code.size() - ctx.child_min;
      std::uint64_t h = form_hash(ch.form);
      auto& bucket = global[h];
      for (auto [os_, oi] : bucket)
        if (os_ == s) throw std::logic_error("classify_step: cross-parent duplicate class");
      bucket.push_back({s, out.children[s].classes.size()});
      ClassRecord rec;
      rec.rep = std::move(ch.code);
      rec.aut_order = ch.aut_order;
      rec.parent_id = (long long)gid;
      rec.nc = results[gid].nc[s];
      out.children[s].classes.push_back(std::move(rec));
    }
  }
  return out;
}

StepOutput run_step(StepContext& ctx, const StepOptions& opts) {
  const size_t np = ctx.parents.size();
  std::vector<ParentResult> results;
  std::ofstream ck;
  size_t start = 0;
  if (!opts.checkpoint_path.empty()) {
    results = read_checkpoint(opts.checkpoint_path, ctx);
    start = results.size();
    bool fresh = start == 0;
    ck.open(opts.checkpoint_path, fresh ? (std::ios::binary | std::ios::trunc) : (std::ios::binary | std::ios::app));
    if (!ck) throw std::runtime_error("checkpoint: cannot open " + opts.checkpoint_path);
    if (fresh) {
      ck << "%ecc-step-checkpoint 1\n" << checkpoint_header(ctx) << "\n";
      ck.flush();
    }
  }
  results.resize(np);
  size_t end = np;
  if (opts.parent_limit >= 0) end = std::min(np, start + size_t(opts.parent_limit));

  auto flush_one = [&](size_t gid) {
    if (ck.is_open()) {
      write_parent_block(ck, gid, results[gid]);
      ck.flush();
    }
  };

  const int workers = std::max(1, opts.workers);
  if (workers <= 1) {
    for (size_t gid = start; gid < end; ++gid) {
      results[gid] = process_parent(ctx, *ctx.parents[gid]);
      flush_one(gid);
      if (opts.progress && (gid + 1) % 1000 == 0) std::cerr << "  parents " << (gid + 1) << "/" << np << "\n";
    }
  } else {
    std::atomic<size_t> next(start);
    std::mutex mu;
    std::condition_variable cv;
    std::vector<char> ready(np ? np : 1, 0);
    auto work = [&] {
      while (true) {
        size_t gid = next.fetch_add(1);
        if (gid >= end) break;
        ParentResult r = process_parent(ctx, *ctx.parents[gid]);
        {
          std::lock_guard<std::mutex> lk(mu);
          results[gid] = std::move(r);
          ready[gid] = 1;
        }
        cv.notify_all();
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    {
      std::unique_lock<std::mutex> lk(mu);
      for (size_t gid = start; gid < end; ++gid) {
        cv.wait(lk, [&] { return ready[gid] != 0; });
        flush_one(gid);
        if (opts.progress && (gid + 1) % 1000 == 0) std::cerr << "  parents " << (gid + 1) << "/" << np << "\n";
      }
    }
    for (auto& t : pool) t.join();
  }
  results.resize(end);
  return assemble(ctx, results, end == np);
}

StepContext make_context(const std::vector<const Catalog*>& parents, int d, bool even_chain, int child_min,
                         int child_max, bool pipeline_filters) {
  StepContext ctx;
  ctx.d = d;
  ctx.even_chain = even_chain;
  ctx.child_min = child_min;
  ctx.child_max = child_max;
  ctx.pipeline_filters = pipeline_filters;
  if (parents.empty()) throw std::invalid_argument("classify_step: no parent catalogs");
  for (const Catalog* cat : parents) {
    if (cat->n != parents[0]->n) throw std::invalid_argument("classify_step: parent lengths differ");
    for (const auto& rec : cat->classes) ctx.parents.push_back(&rec.rep);
  }
  ctx.parent_n = parents[0]->n;
  ctx.child_n = ctx.parent_n + 1;
  return ctx;
}

}  // namespace

StepOutput classify_step(const std::vector<const Catalog*>& parents, int d, bool even_chain,
                         int child_min, int child_max, const StepOptions& opts) {
  StepContext ctx = make_context(parents, d, even_chain, child_min, child_max, false);
  return run_step(ctx, opts);
}

std::vector<Catalog> brute_force_classify(int n, int d, int min_size, int max_size, bool even_only) {
  if (n < 2 || n > 16) throw std::invalid_argument("brute_force_classify: length out of range");
  std::vector<bits_t> verts;
  for (bits_t w = 0; w < (bits_t{1} << n); ++w)
    if (!even_only || (std::popcount(w) & 1) == 0) verts.push_back(w);
  Graph g(int(verts.size()));
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j)
      if (distance_bits(verts[i], verts[j]) >= d) g.add_edge(int(i), int(j));

  std::vector<Catalog> out(max_size - min_size + 1);
  for (int s = 0; s < int(out.size()); ++s) {
    out[s].n = n;
    out[s].m = min_size + s;
    out[s].d = d;
  }
  std::unordered_map<std::uint64_t, std::vector<std::pair<int, CanonicalForm>>> seen;
  cliques_in_range(g, min_size, max_size, [&](const std::vector<int>& idx) {
    std::vector<bits_t> ws;
    ws.reserve(idx.size());
    for (int v : idx) ws.push_back(verts[v]);
    Code c(n, std::move(ws), d);
    CanonicalResult cr = canonical_form(c);
    std::uint64_t h = form_hash(cr.form);
    auto& bucket = seen[h];
    for (auto& [sz, f] : bucket)
      if (sz == c.size() && f == cr.form) return true;
    bucket.push_back({c.size(), cr.form});
    ClassRecord rec;
    rec.rep = std::move(c);
    rec.aut_order = cr.aut.order;
    out[rec.rep.size() - min_size].classes.push_back(std::move(rec));
    return true;
  });
  return out;
}

const Catalog& D3ChainResult::optimal(int n) const {
  const auto& cats = levels.at(n);
  int want = optimal_size_d3(n);
  for (const auto& c : cats)
    if (c.m == want) return c;
  throw std::logic_error("D3ChainResult: optimal catalog missing");
}

D3ChainResult classify_chain_d3(int up_to_n, const StepOptions& opts) {
  if (up_to_n < 4 || up_to_n > 11) throw std::invalid_argument("classify_chain_d3: length must be 4..11");
  // minimum size worth classifying at each length, from the subcode bound
  std::vector<int> thr(up_to_n + 1, 0);
  thr[up_to_n] = optimal_size_d3(up_to_n);
  for (int n = up_to_n - 1; n >= 3; --n) thr[n] = (thr[n + 1] + 1) / 2;

  D3ChainResult res;
  res.levels[3] = brute_force_classify(3, 3, thr[3], optimal_size_d3(3), false);
  for (int n = 4; n <= up_to_n; ++n) {
    std::vector<const Catalog*> parents;
    for (const auto& c : res.levels[n - 1]) parents.push_back(&c);
    StepOptions o = opts;
    if (!opts.checkpoint_path.empty()) o.checkpoint_path = opts.checkpoint_path + ".d3-n" + std::to_string(n);
    StepOutput so = classify_step(parents, 3, false, thr[n], optimal_size_d3(n), o);
    res.complete = res.complete && so.complete;
    res.levels[n] = std::move(so.children);
    if (!res.complete) return res;
  }
  for (int n = 7; n <= up_to_n; ++n) res.extensions[n] = extensions_of(res.optimal(n));
  return res;
}

BootstrapResult classify_bootstrap(const StepOptions& opts) {
  const std::vector<int> thr = {0, 0, 0, 0, 0, 1, 2, 4, 8, 16};
  const std::vector<int> cap = {0, 0, 0, 0, 0, 2, 4, 8, 16, 16};
  BootstrapResult res;
  res.levels[5] = brute_force_classify(5, 4, thr[5], cap[5], true);
  for (int n = 6; n <= 9; ++n) {
    std::vector<const Catalog*> parents;
    for (const auto& c : res.levels[n - 1]) parents.push_back(&c);
    StepOptions o = opts;
    if (!opts.checkpoint_path.empty()) o.checkpoint_path = opts.checkpoint_path + ".d4-n" + std::to_string(n);
    StepOutput so = classify_step(parents, 4, true, thr[n], cap[n], o);
    res.complete = res.complete && so.complete;
    res.levels[n] = std::move(so.children);
    if (!res.complete) return res;
  }
  res.full = res.levels[9].back();
  res.filtered = filter_bootstrap_output(res.full, &res.thm4_rejects);
  return res;
}

Catalog filter_bootstrap_output(const Catalog& cat, long long* thm4_rejects) {
  if (cat.n != 9 || cat.m != 16) throw std::invalid_argument("filter_bootstrap_output: (9,16,4) catalog required");
  Catalog out;
  out.n = cat.n;
  out.m = cat.m;
  out.d = cat.d;
  long long rej = 0;
  for (const auto& rec : cat.classes) {
    if (subcode_count_filter(rec.rep, 4)) {
      ClassRecord r = rec;
      r.flags = "balance,thm4";
      out.classes.push_back(std::move(r));
    } else {
      ++rej;
    }
  }
  if (thm4_rejects) *thm4_rejects = rej;
  return out;
}

StepOutput pipeline_step(const Catalog& parents, const StepOptions& opts) {
  if (parents.d != 4 || parents.n < 9 || parents.n > 13 || parents.m != (1LL << (parents.n - 5)))
    throw std::invalid_argument("pipeline_step: parents must be (l, 2^(l-5), 4) with 9 <= l <= 13");
  int child = int(parents.m * 2);
  StepContext ctx = make_context({&parents}, 4, true, child, child, true);
  StepOutput out = run_step(ctx, opts);
  for (auto& cat : out.children)
    for (auto& rec : cat.classes) rec.flags = cat.n <= 13 ? "balance,thm4" : "";
  return out;
}

Catalog puncture_classify(const Catalog& cat, const StepOptions& opts) {
  (void)opts;
  Catalog out;
  out.n = cat.n - 1;
  out.m = cat.m;
  out.d = cat.d > 1 ? cat.d - 1 : 0;
  std::unordered_map<std::uint64_t, std::vector<std::pair<CanonicalForm, size_t>>> seen;
  for (size_t ci = 0; ci < cat.classes.size(); ++ci) {
    for (int coord = 0; coord < cat.n; ++coord) {
      int merged = 0;
      Code p = puncture(cat.classes[ci].rep, coord, &merged);
      if (merged) throw std::logic_error("puncture_classify: size dropped (d < 2 input?)");
      CanonicalResult cr = canonical_form(p);
      std::uint64_t h = form_hash(cr.form);
      auto& bucket = seen[h];
      bool dup = false;
      for (auto& [f, idx] : bucket)
        if (f == cr.form) {
          dup = true;
          break;
        }
      if (dup) continue;
      bucket.push_back({cr.form, out.classes.size()});
      ClassRecord rec;
      rec.rep = std::move(p);
      rec.aut_order = cr.aut.order;
      rec.parent_id = (long long)ci;
      out.classes.push_back(std::move(rec));
    }
  }
  return out;
}

Catalog extensions_of(const Catalog& cat) {
  if (cat.d != 3) throw std::invalid_argument("extensions_of: d = 3 catalog required");
  Catalog out;
  out.n = cat.n + 1;
  out.m = cat.m;
  out.d = 4;
  std::unordered_map<std::uint64_t, std::vector<CanonicalForm>> seen;
  for (size_t ci = 0; ci < cat.classes.size(); ++ci) {
    const Code& c = cat.classes[ci].rep;
    const int m = c.size();
    // 2-color the distance-3 graph; each consistent component doubles the
    // number of parity assignments
    std::vector<int> color(m, -1), comp_root;
    bool consistent = true;
    for (int v0 = 0; v0 < m && consistent; ++v0) {
      if (color[v0] >= 0) continue;
      comp_root.push_back(v0);
      color[v0] = 0;
      std::vector<int> stack{v0};
      while (!stack.empty() && consistent) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < m; ++u) {
          if (u == v || distance_bits(c.word(v), c.word(u)) != 3) continue;
          if (color[u] < 0) {
            color[u] = color[v] ^ 1;
            stack.push_back(u);
          } else if (color[u] == color[v]) {
            consistent = false;
            break;
          }
        }
      }
    }
    if (!consistent) continue;
    if (comp_root.size() > 24) throw std::runtime_error("extensions_of: too many distance-3 components");
    // component id per word
    std::vector<int> comp(m, -1);
    for (size_t r = 0; r < comp_root.size(); ++r) {
      std::vector<int> stack{int(comp_root[r])};
      comp[comp_root[r]] = int(r);
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < m; ++u)
          if (comp[u] < 0 && distance_bits(c.word(v), c.word(u)) == 3) {
            comp[u] = int(r);
            stack.push_back(u);
          }
      }
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << comp_root.size()); ++mask) {
      std::vector<bits_t> ws;
      ws.reserve(m);
      for (int v = 0; v < m; ++v) {
        int bit = color[v] ^ int((mask >> comp[v]) & 1);
        ws.push_back((c.word(v) << 1) | bits_t(bit));
      }
      Code ext(cat.n + 1, std::move(ws), 4);
      CanonicalResult cr = canonical_form(ext);
      std::uint64_t h = form_hash(cr.form);
      auto& bucket = seen[h];
      bool dup = false;
      for (auto& f : bucket)
        if (f == cr.form) {
          dup = true;
          break;
        }
      if (dup) continue;
      bucket.push_back(cr.form);
      ClassRecord rec;
      rec.rep = std::move(ext);
      rec.aut_order = cr.aut.order;
      rec.parent_id = (long long)ci;
      out.classes.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace ecc
