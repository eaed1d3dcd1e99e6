#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simpcert/error.hpp"

namespace simpcert {

// Rooted tree with m branches at the root and d at every deeper vertex.
// The boundary is the Cantor set of infinite words: first symbol in [0,m),
// later symbols in [0,d).
struct TreeShape {
  int m = 2;
  int d = 2;

  TreeShape() = default;
  TreeShape(int m_, int d_) : m(m_), d(d_) {
    require(m >= 2 && d >= 2, "TreeShape: need m >= 2 and d >= 2");
  }

  friend bool operator==(const TreeShape& a, const TreeShape& b) {
    return a.m == b.m && a.d == b.d;
  }
  friend bool operator!=(const TreeShape& a, const TreeShape& b) { return !(a == b); }
};

// A cylinder is a nonempty word; it denotes the clopen set of boundary
// points extending the word.
using Word = std::vector<int>;

std::string word_to_string(const Word& w);
Word word_from_string(const std::string& s);
void check_word(const TreeShape& shape, const Word& w);

bool is_prefix(const Word& p, const Word& w);
Word word_concat(const Word& a, const Word& b);

// Canonical finite union of cylinders: a sorted antichain in which no full
// sibling family of depth >= 2 survives. The whole space is the full family
// of root letters.
class ClopenSet {
public:
  static ClopenSet make(const TreeShape& shape, std::vector<Word> cylinders);
  static ClopenSet whole(const TreeShape& shape);
  static ClopenSet empty_set(const TreeShape& shape) { return make(shape, {}); }
  static ClopenSet cylinder(const TreeShape& shape, Word w) { return make(shape, {std::move(w)}); }

  const TreeShape& shape() const { return shape_; }
  const std::vector<Word>& cylinders() const { return cyls_; }
  bool empty() const { return cyls_.empty(); }
  bool is_whole() const;
  std::size_t count() const { return cyls_.size(); }

  friend bool operator==(const ClopenSet& a, const ClopenSet& b) {
    return a.shape_ == b.shape_ && a.cyls_ == b.cyls_;
  }
  friend bool operator!=(const ClopenSet& a, const ClopenSet& b) { return !(a == b); }

  std::string to_text() const;
  static ClopenSet from_text(const TreeShape& shape, const std::string& text);

private:
  TreeShape shape_;
  std::vector<Word> cyls_;
};

ClopenSet clopen_union(const ClopenSet& a, const ClopenSet& b);
ClopenSet clopen_intersect(const ClopenSet& a, const ClopenSet& b);
ClopenSet clopen_subtract(const ClopenSet& a, const ClopenSet& b);
ClopenSet clopen_complement(const ClopenSet& a);
bool clopen_subset(const ClopenSet& a, const ClopenSet& b);
bool clopen_proper_subset(const ClopenSet& a, const ClopenSet& b);

// Eventually constant boundary point: stem then a repeating branch letter.
struct BoundaryPoint {
  TreeShape shape;
  Word stem;   // nonempty
  int repeat;  // letter in [0, d)

  BoundaryPoint(const TreeShape& sh, Word st, int rep);
  int letter_at(std::size_t i) const {
    return i < stem.size() ? stem[i] : repeat;
  }
};

bool point_in(const BoundaryPoint& x, const ClopenSet& a);

// Homeomorphism given by a finite table of prefix substitutions u -> v:
// the point u.w maps to v.w. Domain and range cylinders each form a
// complete partition of the boundary; bijectivity is automatic.
//
// Canonical form: sorted by domain, with any family u.c -> v.c (all c)
// merged into u -> v. Canonical tables are equal iff the maps are equal.
class PrefixMap {
public:
  using Entry = std::pair<Word, Word>;

  static PrefixMap identity(const TreeShape& shape);
  // Validates the complete-partition invariant and canonicalises.
  static PrefixMap validate(const TreeShape& shape, std::vector<Entry> table);

  const TreeShape& shape() const { return shape_; }
  const std::vector<Entry>& table() const { return table_; }
  bool is_identity() const;

  friend bool operator==(const PrefixMap& a, const PrefixMap& b) {
    return a.shape_ == b.shape_ && a.table_ == b.table_;
  }
  friend bool operator!=(const PrefixMap& a, const PrefixMap& b) { return !(a == b); }

  std::string to_text() const;
  static PrefixMap from_text(const std::string& text);

private:
  TreeShape shape_;
  std::vector<Entry> table_;
};

PrefixMap compose(const PrefixMap& g, const PrefixMap& f);  // g after f
PrefixMap inverse(const PrefixMap& g);
inline PrefixMap identity_like(const PrefixMap& g) { return PrefixMap::identity(g.shape()); }
PrefixMap conjugate(const PrefixMap& g, const PrefixMap& w);   // w g w^-1
PrefixMap commutator(const PrefixMap& g, const PrefixMap& h);  // g h g^-1 h^-1

ClopenSet apply_clopen(const PrefixMap& g, const ClopenSet& a);
BoundaryPoint apply_point(const PrefixMap& g, const BoundaryPoint& x);

// Clopen over-approximation of the support: the union of non-identity
// table cylinders. The true open support may be smaller by finitely many
// eventually-periodic fixed points, which no clopen can separate.
ClopenSet moved_region(const PrefixMap& g);

// True iff g fixes every point of a.
bool identity_on(const PrefixMap& g, const ClopenSet& a);

// Nonempty clopen U inside `within` with g(U) disjoint from U; nullopt if g
// is the identity on `within`.
std::optional<ClopenSet> moved_clopen_within(const PrefixMap& g, const ClopenSet& within);

// As above over the whole space; throws if g is the identity.
ClopenSet moved_clopen(const PrefixMap& g);

// The involution equal to h on U, h^-1 on h(U) and the identity elsewhere.
// Requires h(U) disjoint from U.
PrefixMap tau_build(const PrefixMap& h, const ClopenSet& u);

// (piece, image) cylinder pairs of g's action covering a exactly.
std::vector<PrefixMap::Entry> refine_pieces(const PrefixMap& g, const ClopenSet& a);

// Compose partial prefix bijections given as pair lists: apply `first`,
// then `second`. Every image of `first` must be covered by the domain of
// `second`.
std::vector<PrefixMap::Entry> partial_compose(const TreeShape& shape,
                                              const std::vector<PrefixMap::Entry>& second,
                                              const std::vector<PrefixMap::Entry>& first);

std::vector<PrefixMap::Entry> invert_pairs(const std::vector<PrefixMap::Entry>& pairs);

// Partial prefix bijection from a onto b as a list of cylinder pairs.
// Requires count(a) = count(b) mod (d-1); counts are equalised by sibling
// splits of the smaller side, then matched in sorted order.
std::vector<PrefixMap::Entry> clopen_biject(const ClopenSet& a, const ClopenSet& b);

// g with g(a) strictly inside b. Deterministic: the image is built from the
// lexicographically smallest cylinders of b.
PrefixMap ep_oracle(const ClopenSet& a, const ClopenSet& b);

}  // namespace simpcert
