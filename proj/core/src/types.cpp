#include "meettree/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace meettree {

namespace {

void require_meet_closed(const MeetTree& t, const std::vector<ElementId>& a) {
  if (a.empty()) throw std::invalid_argument("type base must be nonempty");
  std::uint64_t in = 0;
  for (ElementId e : a) in |= std::uint64_t{1} << e;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (!((in >> t.meet(a[i], a[j])) & 1u))
        throw std::invalid_argument("type base must be meet-closed");
}

// canonical anchor = least valid anchor under the label order
ElementId least_anchor(const MeetTree& t, const std::vector<ElementId>& a, ElementId above) {
  ElementId best = -1;
  for (ElementId x : a)
    if (t.leq(above, x))
      if (best < 0 || t.label(x) < t.label(best)) best = x;
  return best;
}

std::vector<ElementId> cut_of(const MeetTree& t, const std::vector<ElementId>& a, ElementId p,
                              bool strict) {
  std::vector<ElementId> cut;
  for (ElementId x : a)
    if (strict ? t.lt(x, p) : t.leq(x, p)) cut.push_back(x);
  return cut;
}

}  // namespace

OneTypeDescriptor qf_type_of(const MeetTree& t, ElementId b, const std::vector<ElementId>& a) {
  require_meet_closed(t, a);
  // b' = max over A of x /\ b; the candidates all lie below b, hence form a chain
  ElementId bp = t.meet(a[0], b);
  for (ElementId x : a) {
    ElementId m = t.meet(x, b);
    if (t.leq(bp, m)) bp = m;
  }
  OneTypeDescriptor d;
  d.strict_above = (b != bp);
  bool realized = std::find(a.begin(), a.end(), bp) != a.end();
  if (realized) d.realized_at = bp;
  d.cut = cut_of(t, a, bp, /*strict=*/false);
  d.anchor = least_anchor(t, a, bp);
  return d;
}

std::vector<OneTypeDescriptor> enumerate_one_types(const MeetTree& t, const std::vector<ElementId>& a) {
  require_meet_closed(t, a);
  std::vector<OneTypeDescriptor> out;
  for (ElementId e : a) {
    for (bool strict : {false, true}) {
      OneTypeDescriptor d;
      d.strict_above = strict;
      d.realized_at = e;
      d.cut = cut_of(t, a, e, /*strict=*/false);
      d.anchor = least_anchor(t, a, e);
      out.push_back(std::move(d));
    }
  }
  for (ElementId m : a) {
    // unrealized cut immediately below m: in the dense unbounded ambient tree
    // there is always room, including below the minimum
    for (bool strict : {false, true}) {
      OneTypeDescriptor d;
      d.strict_above = strict;
      d.cut = cut_of(t, a, m, /*strict=*/true);
      d.anchor = least_anchor(t, a, m);
      out.push_back(std::move(d));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<OneTypeDescriptor> enumerate_one_types(const MeetTree& a) {
  std::vector<ElementId> all(a.size());
  for (int i = 0; i < a.size(); ++i) all[i] = i;
  return enumerate_one_types(a, all);
}

PointedExtension realize_type(const MeetTree& t, const std::vector<ElementId>& a,
                              const OneTypeDescriptor& d) {
  auto menu = enumerate_one_types(t, a);
  if (std::find(menu.begin(), menu.end(), d) == menu.end())
    throw std::invalid_argument("realize_type: descriptor is not a valid type over the base");

  PointedExtension ext;
  if (d.realized_at) {
    ElementId e = *d.realized_at;
    if (!d.strict_above) {
      // the type pins the point to e itself; nothing fresh to add
      ext.tree = t;
      ext.new_point = e;
      return ext;
    }
    ext.tree = t.with_fresh_branch_at(e, t.fresh_label(), &ext.new_point);
    return ext;
  }
  // unrealized cut: the gap sits immediately below m = min(A cap up-set of anchor, above cut)
  ElementId m = -1;
  {
    std::uint64_t cutmask = 0;
    for (ElementId x : d.cut) cutmask |= std::uint64_t{1} << x;
    for (ElementId x : a)
      if (t.leq(x, d.anchor) && !((cutmask >> x) & 1u))
        if (m < 0 || t.leq(x, m)) m = x;
  }
  if (m < 0) throw std::invalid_argument("realize_type: malformed unrealized cut");
  ElementId pos = -1;
  MeetTree grown = t.with_inserted_below(m, t.fresh_label(), &pos);
  if (!d.strict_above) {
    ext.tree = std::move(grown);
    ext.new_point = pos;
    return ext;
  }
  ext.new_meet_point = pos;
  ext.tree = grown.with_fresh_branch_at(pos, grown.fresh_label(), &ext.new_point);
  return ext;
}

PointedExtension realize_type(const MeetTree& a, const OneTypeDescriptor& d) {
  std::vector<ElementId> all(a.size());
  for (int i = 0; i < a.size(); ++i) all[i] = i;
  return realize_type(a, all, d);
}

std::string describe(const MeetTree& t, const OneTypeDescriptor& d) {
  std::string s = "anchor=" + t.label(d.anchor);
  s += d.strict_above ? " strict" : " at-cut";
  s += " cut={";
  for (size_t i = 0; i < d.cut.size(); ++i) {
    if (i) s += ",";
    s += t.label(d.cut[i]);
  }
  s += "}";
  if (d.realized_at) s += " realized@" + t.label(*d.realized_at);
  return s;
}

}  // namespace meettree
