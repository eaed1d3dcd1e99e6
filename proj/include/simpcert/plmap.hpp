#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simpcert/qrational.hpp"

namespace simpcert {

// Bounded, order-preserving piecewise-affine bijection of the line with
// breakpoints in Z[1/q] and slopes that are integer powers of q. The table
// lists breakpoints (x_i, y_i); the map interpolates affinely between them
// and is the identity outside [x_0, x_n]. The empty table is the identity.
//
// Canonical form: y_0 = x_0, y_n = x_n, no breakpoint where the slope does
// not change (the outside counts as slope 1). Canonical tables are equal
// iff the maps are equal pointwise.
class PLMap {
public:
  using Table = std::vector<std::pair<QRational, QRational>>;

  static PLMap identity(int q) {
    require(q >= 2, "PLMap: base q must be at least 2");
    PLMap g;
    g.q_ = q;
    return g;
  }

  // Validates monotonicity, balanced endpoints and power-of-q slopes, then
  // removes redundant breakpoints.
  static PLMap validate(int q, Table table);

  int base() const { return q_; }
  const Table& table() const { return table_; }
  bool is_identity() const { return table_.empty(); }

  QRational eval(const QRational& x) const;
  QRational eval_inverse(const QRational& y) const;

  friend bool operator==(const PLMap& a, const PLMap& b) {
    return a.q_ == b.q_ && a.table_ == b.table_;
  }
  friend bool operator!=(const PLMap& a, const PLMap& b) { return !(a == b); }

  std::string to_text() const;
  static PLMap from_text(const std::string& text);

private:
  int q_ = 2;
  Table table_;
};

// g after f, i.e. x -> g(f(x)).
PLMap compose(const PLMap& g, const PLMap& f);
PLMap inverse(const PLMap& g);
inline PLMap identity_like(const PLMap& g) { return PLMap::identity(g.base()); }

// w g w^-1
PLMap conjugate(const PLMap& g, const PLMap& w);
// g h g^-1 h^-1
PLMap commutator(const PLMap& g, const PLMap& h);

// Smallest-scale ideal grid points just outside the breakpoint hull; every
// moved point lies strictly inside the returned interval and both endpoints
// lie in I = (q-1) Z[1/q]. Empty for the identity.
std::optional<Interval> support_bounds(const PLMap& g);

// Joint support bounds of a family; empty if all members are the identity.
std::optional<Interval> support_bounds(const std::vector<PLMap>& gs);

// A breakpoint run mapping [x1,x2] onto [y1,y2]; not a full map on its own.
using PLPiece = PLMap::Table;

// Builds a piece with power-of-q slopes and breakpoints in Z[1/q].
// Requires (y2-y1) - (x2-x1) in I; each affine slice preserves length mod I,
// so the congruence is also necessary.
PLPiece interp_build(const QRational& x1, const QRational& x2, const QRational& y1,
                     const QRational& y2);

// Glue consecutive pieces (shared endpoints) into a full map.
PLMap glue_pieces(int q, const std::vector<PLPiece>& pieces);

// g in BF_q with g((a,b)) = (c,d), hence covering (c,d). All four endpoints
// must lie in I.
PLMap move_interval(const QRational& a, const QRational& b, const QRational& c,
                    const QRational& d);

// h whose iterates h^j((a,b)), 0 <= j <= K, are pairwise disjoint: a
// push-right map with h(a) = b. Endpoints of J must lie in I.
PLMap order_displacer(const Interval& J, int K);

// F_{q,r} variant: a PLMap whose support is confined to (0, r), r < q.
struct FqrMap {
  PLMap map;
  int r;
};

FqrMap make_fqr(PLMap map, int r);

}  // namespace simpcert
