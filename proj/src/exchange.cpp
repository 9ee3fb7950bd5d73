#include "exlift/exchange.hpp"

#include "exlift/error.hpp"

namespace exlift {

std::optional<ExchangeWitness> exchange_witness_unital(const FiniteRing& R, Elem a) {
  const Elem one_minus_a = R.sub(R.one(), a);
  for (Elem e : R.idempotents()) {
    std::optional<Elem> r, s;
    for (Elem t = 0; t < R.size() && !r; ++t)
      if (R.mul(a, t) == e) r = t;
    if (!r) continue;
    const Elem target = R.sub(R.one(), e);
    for (Elem t = 0; t < R.size() && !s; ++t)
      if (R.mul(one_minus_a, t) == target) s = t;
    if (s) return ExchangeWitness{e, *r, *s};
  }
  return std::nullopt;
}

std::optional<ExchangeWitness> exchange_witness_ideal(const Ideal& I, Elem x) {
  const auto& R = *I.ring();
  if (!I.contains(x)) fail(ErrorCode::NotInIdeal, R.label(x) + " is not in the ideal");
  for (Elem e : I.members()) {
    if (!R.is_idempotent(e)) continue;
    std::optional<Elem> r, s;
    for (Elem t : I.members())
      if (R.mul(x, t) == e) {
        r = t;
        break;
      }
    if (!r) continue;
    for (Elem t : I.members())
      if (R.sub(R.add(x, t), R.mul(x, t)) == e) {
        s = t;
        break;
      }
    if (s) return ExchangeWitness{e, *r, *s};
  }
  return std::nullopt;
}

std::optional<ExchangeWitness> exchange_witness_embedded(const Ideal& I, Elem x) {
  const auto& R = *I.ring();
  if (!I.contains(x)) fail(ErrorCode::NotInIdeal, R.label(x) + " is not in the ideal");
  const Elem one_minus_x = R.sub(R.one(), x);
  for (Elem e : I.members()) {
    if (!R.is_idempotent(e)) continue;
    std::optional<Elem> r, s;
    for (Elem t : I.members())
      if (R.mul(x, t) == e) {
        r = t;
        break;
      }
    if (!r) continue;
    const Elem target = R.sub(R.one(), e);
    for (Elem t = 0; t < R.size(); ++t)
      if (R.mul(one_minus_x, t) == target) {
        s = t;
        break;
      }
    if (s) return ExchangeWitness{e, *r, *s};
  }
  return std::nullopt;
}

bool is_exchange_ring(const FiniteRing& R) {
  for (Elem a = 0; a < R.size(); ++a)
    if (!exchange_witness_unital(R, a)) return false;
  return true;
}

bool is_exchange_ideal(const Ideal& I) {
  for (Elem x : I.members())
    if (!exchange_witness_ideal(I, x)) return false;
  return true;
}

bool is_exchange_ideal_embedded(const Ideal& I) {
  for (Elem x : I.members())
    if (!exchange_witness_embedded(I, x)) return false;
  return true;
}

std::optional<Elem> lift_idempotent(const FiniteRing& Q, Elem ebar) {
  if (Q.kind() != FiniteRing::Kind::Quotient) fail(ErrorCode::InvalidSpec, "lift_idempotent needs a quotient ring");
  if (!Q.is_idempotent(ebar)) fail(ErrorCode::NotIdempotent, Q.label(ebar) + " is not idempotent modulo the ideal");
  for (Elem e : Q.base()->idempotents())
    if (Q.project(e) == ebar) return e;
  return std::nullopt;
}

Ideal corner_ideal(const RingPtr& corner, const Ideal& I) {
  if (corner->kind() != FiniteRing::Kind::Corner || !same_ring(*corner->base(), *I.ring()))
    fail(ErrorCode::RingMismatch, "corner ring does not sit over the ideal's ring");
  std::vector<Elem> members;
  for (Elem c = 0; c < corner->size(); ++c)
    if (I.contains(corner->embed(c))) members.push_back(c);
  return Ideal::from_members(corner, members);
}

Ideal matrix_ideal(const RingPtr& S, const Ideal& I) {
  if (S->kind() != FiniteRing::Kind::Matrix || !same_ring(*S->base(), *I.ring()))
    fail(ErrorCode::RingMismatch, "matrix ring does not sit over the ideal's ring");
  const int k = S->dim();
  std::vector<Elem> members, gens;
  for (Elem m = 0; m < S->size(); ++m) {
    bool in = true;
    for (Elem x : S->entries(m)) in = in && I.contains(x);
    if (in) members.push_back(m);
  }
  // M_k(I) is generated by g*e_11 for generators g of I.
  std::vector<Elem> entries(static_cast<std::size_t>(k * k), I.ring()->zero());
  for (Elem g : I.generators()) {
    entries[0] = g;
    gens.push_back(S->from_entries(entries));
  }
  return Ideal::from_members(S, members, gens.empty() ? std::vector<Elem>{S->zero()} : gens);
}

}  // namespace exlift
