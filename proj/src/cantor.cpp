#include "simpcert/cantor.hpp"

#include <algorithm>
#include <sstream>

namespace simpcert {

std::string word_to_string(const Word& w) {
  bool wide = false;
  for (int c : w) wide = wide || c > 9;
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (wide && i) s += '.';
    s += std::to_string(w[i]);
  }
  return s;
}

Word word_from_string(const std::string& s) {
  Word w;
  require(!s.empty(), "word: empty");
  if (s.find('.') != std::string::npos) {
    std::istringstream is(s);
    std::string part;
    while (std::getline(is, part, '.')) {
      require(!part.empty() && part.find_first_not_of("0123456789") == std::string::npos,
              "word: bad segment in '" + s + "'");
      w.push_back(std::stoi(part));
    }
  } else {
    for (char c : s) {
      require(c >= '0' && c <= '9', "word: bad character in '" + s + "'");
      w.push_back(c - '0');
    }
  }
  return w;
}

void check_word(const TreeShape& shape, const Word& w) {
  require(!w.empty(), "word: cylinders must be nonempty words");
  require(w[0] >= 0 && w[0] < shape.m,
          "word: root letter out of range in '" + word_to_string(w) + "'");
  for (std::size_t i = 1; i < w.size(); ++i)
    require(w[i] >= 0 && w[i] < shape.d,
            "word: branch letter out of range in '" + word_to_string(w) + "'");
}

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

Word word_concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

namespace {

Word suffix_from(const Word& w, std::size_t i) { return Word(w.begin() + i, w.end()); }

// Merge every full sibling family of depth >= 2 into its parent.
void merge_families(const TreeShape& shape, std::vector<Word>& cyls) {
  bool merged = true;
  while (merged) {
    merged = false;
    std::sort(cyls.begin(), cyls.end());
    for (std::size_t i = 0; i + shape.d <= cyls.size(); ++i) {
      const Word& w = cyls[i];
      if (w.size() < 2 || w.back() != 0) continue;
      bool family = true;
      for (int c = 0; c < shape.d && family; ++c) {
        const Word& s = cyls[i + c];
        family = s.size() == w.size() && std::equal(w.begin(), w.end() - 1, s.begin()) &&
                 s.back() == c;
      }
      if (!family) continue;
      Word parent(w.begin(), w.end() - 1);
      cyls.erase(cyls.begin() + i, cyls.begin() + i + shape.d);
      cyls.insert(cyls.begin() + i, parent);
      merged = true;
      break;
    }
  }
}

}  // namespace

ClopenSet ClopenSet::make(const TreeShape& shape, std::vector<Word> cylinders) {
  for (const Word& w : cylinders) check_word(shape, w);
  std::sort(cylinders.begin(), cylinders.end());
  std::vector<Word> kept;
  for (Word& w : cylinders) {
    if (!kept.empty() && is_prefix(kept.back(), w)) continue;  // covered or duplicate
    kept.push_back(std::move(w));
  }
  merge_families(shape, kept);
  ClopenSet a;
  a.shape_ = shape;
  a.cyls_ = std::move(kept);
  return a;
}

ClopenSet ClopenSet::whole(const TreeShape& shape) {
  std::vector<Word> roots;
  for (int c = 0; c < shape.m; ++c) roots.push_back({c});
  return make(shape, std::move(roots));
}

bool ClopenSet::is_whole() const {
  if (cyls_.size() != static_cast<std::size_t>(shape_.m)) return false;
  for (int c = 0; c < shape_.m; ++c)
    if (cyls_[c] != Word{c}) return false;
  return true;
}

namespace {

void check_same_shape(const ClopenSet& a, const ClopenSet& b, const char* op) {
  require(a.shape() == b.shape(), std::string("clopen ") + op + ": shape mismatch");
}

// Pieces of [a] not covered by any word of bs.
void subtract_cylinder(const TreeShape& shape, const Word& a, const std::vector<Word>& bs,
                       std::vector<Word>& out) {
  bool any_below = false;
  for (const Word& b : bs) {
    if (is_prefix(b, a)) return;  // fully covered
    if (is_prefix(a, b)) any_below = true;
  }
  if (!any_below) {
    out.push_back(a);
    return;
  }
  for (int c = 0; c < shape.d; ++c) {
    Word child = a;
    child.push_back(c);
    subtract_cylinder(shape, child, bs, out);
  }
}

}  // namespace

ClopenSet clopen_union(const ClopenSet& a, const ClopenSet& b) {
  check_same_shape(a, b, "union");
  std::vector<Word> all = a.cylinders();
  all.insert(all.end(), b.cylinders().begin(), b.cylinders().end());
  return ClopenSet::make(a.shape(), std::move(all));
}

ClopenSet clopen_intersect(const ClopenSet& a, const ClopenSet& b) {
  check_same_shape(a, b, "intersect");
  std::vector<Word> out;
  for (const Word& u : a.cylinders())
    for (const Word& v : b.cylinders()) {
      if (is_prefix(u, v))
        out.push_back(v);
      else if (is_prefix(v, u))
        out.push_back(u);
    }
  return ClopenSet::make(a.shape(), std::move(out));
}

ClopenSet clopen_subtract(const ClopenSet& a, const ClopenSet& b) {
  check_same_shape(a, b, "subtract");
  std::vector<Word> out;
  for (const Word& u : a.cylinders()) subtract_cylinder(a.shape(), u, b.cylinders(), out);
  return ClopenSet::make(a.shape(), std::move(out));
}

ClopenSet clopen_complement(const ClopenSet& a) {
  return clopen_subtract(ClopenSet::whole(a.shape()), a);
}

bool clopen_subset(const ClopenSet& a, const ClopenSet& b) {
  return clopen_subtract(a, b).empty();
}

bool clopen_proper_subset(const ClopenSet& a, const ClopenSet& b) {
  return clopen_subset(a, b) && a != b;
}

std::string ClopenSet::to_text() const {
  std::string s = "{";
  for (std::size_t i = 0; i < cyls_.size(); ++i) {
    if (i) s += ",";
    s += word_to_string(cyls_[i]);
  }
  return s + "}";
}

ClopenSet ClopenSet::from_text(const TreeShape& shape, const std::string& text) {
  std::size_t lo = text.find('{'), hi = text.rfind('}');
  require(lo != std::string::npos && hi != std::string::npos && lo < hi,
          "clopen: expected {u1,u2,...} but got '" + text + "'");
  std::string body = text.substr(lo + 1, hi - lo - 1);
  std::vector<Word> cyls;
  std::istringstream is(body);
  std::string part;
  while (std::getline(is, part, ',')) {
    std::size_t b = part.find_first_not_of(" \t"), e = part.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    cyls.push_back(word_from_string(part.substr(b, e - b + 1)));
  }
  return make(shape, std::move(cyls));
}

BoundaryPoint::BoundaryPoint(const TreeShape& sh, Word st, int rep)
    : shape(sh), stem(std::move(st)), repeat(rep) {
  check_word(shape, stem);
  require(repeat >= 0 && repeat < shape.d, "BoundaryPoint: repeat letter out of range");
  // Canonical stem: no trailing letters equal to the repeating one.
  while (stem.size() > 1 && stem.back() == repeat) stem.pop_back();
}

bool point_in(const BoundaryPoint& x, const ClopenSet& a) {
  require(x.shape == a.shape(), "point_in: shape mismatch");
  for (const Word& u : a.cylinders()) {
    bool inside = true;
    for (std::size_t i = 0; i < u.size() && inside; ++i) inside = u[i] == x.letter_at(i);
    if (inside) return true;
  }
  return false;
}

PrefixMap PrefixMap::identity(const TreeShape& shape) {
  std::vector<Entry> t;
  for (int c = 0; c < shape.m; ++c) t.push_back({{c}, {c}});
  return validate(shape, std::move(t));
}

namespace {

void check_partition(const TreeShape& shape, std::vector<Word> words, const char* side) {
  std::sort(words.begin(), words.end());
  for (std::size_t i = 0; i + 1 < words.size(); ++i)
    require(!is_prefix(words[i], words[i + 1]),
            std::string("PrefixMap: ") + side + " cylinders overlap at " +
                word_to_string(words[i]));
  require(ClopenSet::make(shape, words).is_whole(),
          std::string("PrefixMap: ") + side + " cylinders do not cover the space");
}

}  // namespace

PrefixMap PrefixMap::validate(const TreeShape& shape, std::vector<Entry> table) {
  std::vector<Word> dom, ran;
  for (const auto& [u, v] : table) {
    check_word(shape, u);
    check_word(shape, v);
    dom.push_back(u);
    ran.push_back(v);
  }
  check_partition(shape, std::move(dom), "domain");
  check_partition(shape, std::move(ran), "range");

  std::sort(table.begin(), table.end());
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i + shape.d <= table.size(); ++i) {
      const auto& [u, v] = table[i];
      if (u.size() < 2 || v.size() < 2 || u.back() != 0 || v.back() != 0) continue;
      bool family = true;
      for (int c = 0; c < shape.d && family; ++c) {
        const auto& [uc, vc] = table[i + c];
        family = uc.size() == u.size() && vc.size() == v.size() &&
                 std::equal(u.begin(), u.end() - 1, uc.begin()) &&
                 std::equal(v.begin(), v.end() - 1, vc.begin()) && uc.back() == c &&
                 vc.back() == c;
      }
      if (!family) continue;
      Entry parent{Word(u.begin(), u.end() - 1), Word(v.begin(), v.end() - 1)};
      table.erase(table.begin() + i, table.begin() + i + shape.d);
      table.insert(table.begin() + i, std::move(parent));
      std::sort(table.begin(), table.end());
      merged = true;
      break;
    }
  }

  PrefixMap g;
  g.shape_ = shape;
  g.table_ = std::move(table);
  return g;
}

bool PrefixMap::is_identity() const {
  for (const auto& [u, v] : table_)
    if (u != v) return false;
  return true;
}

namespace {

// Append the image pieces of (u -> v) refined against g's domain partition.
void refine_through(const PrefixMap& g, const Word& u, const Word& v,
                    std::vector<PrefixMap::Entry>& out) {
  for (const auto& [p, r] : g.table()) {
    if (is_prefix(p, v)) {
      out.push_back({u, word_concat(r, suffix_from(v, p.size()))});
      return;
    }
  }
  for (int c = 0; c < g.shape().d; ++c) {
    Word uc = u, vc = v;
    uc.push_back(c);
    vc.push_back(c);
    refine_through(g, uc, vc, out);
  }
}

}  // namespace

PrefixMap compose(const PrefixMap& g, const PrefixMap& f) {
  require(g.shape() == f.shape(), "compose: shape mismatch");
  std::vector<PrefixMap::Entry> out;
  for (const auto& [u, v] : f.table()) refine_through(g, u, v, out);
  return PrefixMap::validate(g.shape(), std::move(out));
}

PrefixMap inverse(const PrefixMap& g) {
  std::vector<PrefixMap::Entry> out;
  for (const auto& [u, v] : g.table()) out.push_back({v, u});
  return PrefixMap::validate(g.shape(), std::move(out));
}

PrefixMap conjugate(const PrefixMap& g, const PrefixMap& w) {
  return compose(compose(w, g), inverse(w));
}

PrefixMap commutator(const PrefixMap& g, const PrefixMap& h) {
  return compose(compose(compose(g, h), inverse(g)), inverse(h));
}

ClopenSet apply_clopen(const PrefixMap& g, const ClopenSet& a) {
  require(g.shape() == a.shape(), "apply_clopen: shape mismatch");
  std::vector<Word> out;
  for (const Word& w : a.cylinders())
    for (const auto& [u, v] : g.table()) {
      if (is_prefix(u, w))
        out.push_back(word_concat(v, suffix_from(w, u.size())));
      else if (is_prefix(w, u))
        out.push_back(v);
    }
  return ClopenSet::make(g.shape(), std::move(out));
}

BoundaryPoint apply_point(const PrefixMap& g, const BoundaryPoint& x) {
  require(g.shape() == x.shape, "apply_point: shape mismatch");
  for (const auto& [u, v] : g.table()) {
    bool match = true;
    for (std::size_t i = 0; i < u.size() && match; ++i) match = u[i] == x.letter_at(i);
    if (!match) continue;
    Word stem = v;
    for (std::size_t i = u.size(); i < std::max(u.size(), x.stem.size()); ++i)
      stem.push_back(x.letter_at(i));
    return BoundaryPoint(g.shape(), std::move(stem), x.repeat);
  }
  throw InternalError("apply_point: point escaped the domain partition");
}

ClopenSet moved_region(const PrefixMap& g) {
  std::vector<Word> out;
  for (const auto& [u, v] : g.table())
    if (u != v) out.push_back(u);
  return ClopenSet::make(g.shape(), std::move(out));
}

bool identity_on(const PrefixMap& g, const ClopenSet& a) {
  require(g.shape() == a.shape(), "identity_on: shape mismatch");
  return clopen_intersect(moved_region(g), a).empty();
}

std::optional<ClopenSet> moved_clopen_within(const PrefixMap& g, const ClopenSet& within) {
  require(g.shape() == within.shape(), "moved_clopen: shape mismatch");
  const TreeShape& shape = g.shape();

  // Refine `within` against the domain partition into (piece, image) pairs.
  std::vector<PrefixMap::Entry> pieces;
  for (const Word& a : within.cylinders())
    for (const auto& [u, v] : g.table()) {
      if (is_prefix(u, a))
        pieces.push_back({a, word_concat(v, suffix_from(a, u.size()))});
      else if (is_prefix(a, u) && a != u)
        pieces.push_back({u, v});
    }

  for (const auto& [c, w] : pieces) {
    if (c == w) continue;
    Word cand = c, img = w;
    if (is_prefix(c, w) || is_prefix(w, c)) {
      // Comparable: one extra letter chosen off the longer suffix separates them.
      const Word& longer = c.size() > w.size() ? c : w;
      int sep = longer[std::min(c.size(), w.size())];
      int t = sep == 0 ? 1 : 0;
      cand.push_back(t);
      img.push_back(t);
    }
    check_internal(!is_prefix(cand, img) && !is_prefix(img, cand),
                   "moved_clopen: candidate still comparable with its image");
    ClopenSet u = ClopenSet::cylinder(shape, cand);
    check_internal(clopen_intersect(u, apply_clopen(g, u)).empty(),
                   "moved_clopen: image is not disjoint");
    return u;
  }
  return std::nullopt;
}

ClopenSet moved_clopen(const PrefixMap& g) {
  auto u = moved_clopen_within(g, ClopenSet::whole(g.shape()));
  require(u.has_value(), "moved_clopen: map is the identity");
  return *u;
}

std::vector<PrefixMap::Entry> refine_pieces(const PrefixMap& g, const ClopenSet& a) {
  require(g.shape() == a.shape(), "refine_pieces: shape mismatch");
  std::vector<PrefixMap::Entry> pieces;
  for (const Word& w : a.cylinders())
    for (const auto& [u, v] : g.table()) {
      if (is_prefix(u, w))
        pieces.push_back({w, word_concat(v, suffix_from(w, u.size()))});
      else if (is_prefix(w, u) && w != u)
        pieces.push_back({u, v});
    }
  return pieces;
}

namespace {

void partial_refine(const TreeShape& shape, const std::vector<PrefixMap::Entry>& second,
                    const Word& u, const Word& v, std::vector<PrefixMap::Entry>& out, int depth) {
  check_internal(depth < 64, "partial_compose: image not covered by the second map");
  for (const auto& [p, r] : second) {
    if (is_prefix(p, v)) {
      out.push_back({u, word_concat(r, suffix_from(v, p.size()))});
      return;
    }
  }
  bool below = false;
  for (const auto& [p, r] : second) below = below || is_prefix(v, p);
  check_internal(below, "partial_compose: image escapes the second map's domain");
  for (int c = 0; c < shape.d; ++c) {
    Word uc = u, vc = v;
    uc.push_back(c);
    vc.push_back(c);
    partial_refine(shape, second, uc, vc, out, depth + 1);
  }
}

}  // namespace

std::vector<PrefixMap::Entry> partial_compose(const TreeShape& shape,
                                              const std::vector<PrefixMap::Entry>& second,
                                              const std::vector<PrefixMap::Entry>& first) {
  std::vector<PrefixMap::Entry> out;
  for (const auto& [u, v] : first) partial_refine(shape, second, u, v, out, 0);
  return out;
}

std::vector<PrefixMap::Entry> invert_pairs(const std::vector<PrefixMap::Entry>& pairs) {
  std::vector<PrefixMap::Entry> out;
  out.reserve(pairs.size());
  for (const auto& [u, v] : pairs) out.push_back({v, u});
  return out;
}

PrefixMap tau_build(const PrefixMap& h, const ClopenSet& u) {
  require(h.shape() == u.shape(), "tau_build: shape mismatch");
  require(!u.empty(), "tau_build: U must be nonempty");
  ClopenSet hu = apply_clopen(h, u);
  require(clopen_intersect(u, hu).empty(), "tau_build: h(U) meets U");

  std::vector<PrefixMap::Entry> entries;
  for (const auto& [c, img] : refine_pieces(h, u)) {
    entries.push_back({c, img});
    entries.push_back({img, c});
  }
  ClopenSet rest = clopen_complement(clopen_union(u, hu));
  for (const Word& w : rest.cylinders()) entries.push_back({w, w});

  PrefixMap tau = PrefixMap::validate(h.shape(), std::move(entries));
  check_internal(compose(tau, tau).is_identity(), "tau_build: result is not an involution");
  return tau;
}

std::vector<PrefixMap::Entry> clopen_biject(const ClopenSet& a, const ClopenSet& b) {
  check_same_shape(a, b, "biject");
  require(!a.empty() && !b.empty(), "clopen_biject: sets must be nonempty");
  const int d = a.shape().d;
  long long ra = static_cast<long long>(a.count()) % (d - 1);
  long long rb = static_cast<long long>(b.count()) % (d - 1);
  require(ra == rb, "clopen_biject: cylinder counts differ mod d-1 (" + std::to_string(ra) +
                        " vs " + std::to_string(rb) + ")");

  std::vector<Word> xs = a.cylinders(), ys = b.cylinders();
  auto split_first = [&](std::vector<Word>& ws) {
    Word w = ws.front();
    ws.erase(ws.begin());
    for (int c = 0; c < d; ++c) {
      Word child = w;
      child.push_back(c);
      ws.push_back(std::move(child));
    }
    std::sort(ws.begin(), ws.end());
  };
  while (xs.size() < ys.size()) split_first(xs);
  while (ys.size() < xs.size()) split_first(ys);

  std::vector<PrefixMap::Entry> out;
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({xs[i], ys[i]});
  return out;
}

PrefixMap ep_oracle(const ClopenSet& a, const ClopenSet& b) {
  check_same_shape(a, b, "ep_oracle");
  require(!a.empty() && !a.is_whole(), "ep_oracle: source must be nonempty and proper");
  require(!b.empty() && !b.is_whole(), "ep_oracle: target must be nonempty and proper");
  const TreeShape& shape = a.shape();
  const int d = shape.d;

  // Strict sub-antichain of b with the right cylinder count mod d-1, built
  // from children of b's smallest cylinder.
  int r = static_cast<int>((a.count() - 1) % (d - 1)) + 1;
  std::vector<Word> target;
  for (int c = 0; c < r; ++c) {
    Word w = b.cylinders().front();
    w.push_back(c);
    target.push_back(std::move(w));
  }
  ClopenSet bp = ClopenSet::make(shape, std::move(target));

  std::vector<PrefixMap::Entry> entries = clopen_biject(a, bp);
  std::vector<PrefixMap::Entry> rest = clopen_biject(clopen_complement(a), clopen_complement(bp));
  entries.insert(entries.end(), rest.begin(), rest.end());
  PrefixMap g = PrefixMap::validate(shape, std::move(entries));

  check_internal(apply_clopen(g, a) == bp, "ep_oracle: image mismatch");
  check_internal(clopen_proper_subset(bp, b), "ep_oracle: image is not strictly inside b");
  return g;
}

std::string PrefixMap::to_text() const {
  std::ostringstream os;
  os << "vmap m=" << shape_.m << " d=" << shape_.d << "\n";
  for (const auto& [u, v] : table_) os << word_to_string(u) << " -> " << word_to_string(v) << "\n";
  return os.str();
}

PrefixMap PrefixMap::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), "vmap: empty input");
  int m = 0, d = 0;
  {
    std::istringstream hs(line);
    std::string word, meq, deq;
    hs >> word >> meq >> deq;
    require(word == "vmap" && meq.rfind("m=", 0) == 0 && deq.rfind("d=", 0) == 0,
            "vmap: bad header '" + line + "'");
    try {
      m = std::stoi(meq.substr(2));
      d = std::stoi(deq.substr(2));
    } catch (const std::exception&) {
      throw Error("vmap: bad arity in header '" + line + "'");
    }
  }
  TreeShape shape(m, d);
  std::vector<Entry> table;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto arrow = line.find("->");
    require(arrow != std::string::npos, "vmap: expected 'u -> v' but got '" + line + "'");
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    table.push_back({word_from_string(trim(line.substr(0, arrow))),
                     word_from_string(trim(line.substr(arrow + 2)))});
  }
  return validate(shape, std::move(table));
}

}  // namespace simpcert
