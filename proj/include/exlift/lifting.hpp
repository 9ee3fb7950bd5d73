#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "exlift/ktheory.hpp"
#include "exlift/matrix.hpp"
#include "exlift/vmonoid.hpp"

namespace exlift {

/// Truncation at which separativity of V(I) is checked and recorded.
inline constexpr int kSeparativityTruncation = 2;

/// Everything the reduction and lifting routines need about (R, I), computed
/// once. The opposite context serves the column reductions.
struct LiftContext {
  RingPtr ring;
  Ideal ideal;
  RingPtr quotient;
  std::shared_ptr<const VMonoid> v;
  int truncation = kSeparativityTruncation;
  bool exchange = false;
  bool separative = false;
  std::shared_ptr<const LiftContext> opposite;
  std::unordered_map<Elem, std::vector<int>> idempotent_counts;

  const std::vector<int>& counts(Elem idempotent) const;
  KContext k_context() const { return {ring, ideal, quotient, v}; }
};

std::shared_ptr<const LiftContext> make_lift_context(const Ideal& ideal, int truncation = kSeparativityTruncation);

/// Least idempotent g in e1 R + e2 R with [e1], [e2] <= [g] and
/// RgR = R e1 R + R e2 R. Throws PreconditionFailed, SearchExhausted.
Elem join_idempotent(const LiftContext& ctx, Elem e1, Elem e2);

/// One unimodular-row step on (c, d): least (x, y) with cx + dy = 1, least
/// embedded exchange witness (e, t0, t2) for cx, then r = x t0 e and
/// s = y t2 (1 - e), so that e = cr, re = r, 1 - e = ds, s(1 - e) = s.
struct RowPass {
  Elem c = 0, d = 0, x = 0, y = 0, e = 0, t0 = 0, t2 = 0, r = 0, s = 0;
};

struct ReductionTrace {
  RowPass first;
  Elem w = 0;                 // ec + (1 - e)d
  Elem f = 0, t3 = 0, t4 = 0; // least embedded exchange witness for e w r
  Elem w1 = 0, w2 = 0;        // r t3 f and s t4 (1 - f)
  Elem f1 = 0, f2 = 0;        // w w1 e and w w2 (1 - e)
  Elem g = 0, wp = 0;         // join of f1, f2 and least w' with w w' = g
  RowPass second;             // on ((1 - g) e c, w)
  Elem c_out = 0, d_out = 0, h = 0;
};

/// Reduction of a 2x2 invertible matrix with off-diagonal entries
/// in I. For rows the word is six right ops and the idempotent is h with
/// c'R = (1-h)R, d'R = hR, RhR = R. For columns the trace lives over the
/// opposite ring, the word is six left ops and the idempotent is k with
/// Rb'' = R(1-k), Rd'' = Rk, RkR = R.
struct ReductionResult {
  Side side = Side::Right;
  RMatrix input;
  ElemWord word;
  Elem idempotent = 0;
  RMatrix result;
  ReductionTrace trace;
};

ReductionResult reduce_row(const LiftContext& ctx, const RMatrix& alpha);
ReductionResult reduce_col(const LiftContext& ctx, const RMatrix& alpha);

/// d = f u with f idempotent and u a unit, where w is the first unit with
/// d w d = d (w = 1 tried first), f = d w and u = w^-1. Also records the
/// idempotents 1-p, 1-q of I with dR = (1-p)R and Rd = R(1-q).
struct UnitRegularWitness {
  Elem d = 0, p = 0, q = 0, w = 0, f = 0, u = 0;
};

/// Throws PreconditionFailed (naming the failed hypothesis), SearchExhausted.
UnitRegularWitness unit_regular_witness(const LiftContext& ctx, Elem d);

struct DiagonalizationResult {
  RMatrix alpha;
  ReductionResult row;         // on alpha
  RMatrix alpha_prime;         // sigma (alpha beta0) sigma
  ReductionResult col;         // on alpha_prime
  Elem one_minus_p = 0;        // least idempotent of I with (1-p)R = b'R
  UnitRegularWitness regular;  // of b'
  Elem t = 0, v = 0, zp = 0;
  ElemWord gamma, beta, epsilon;
  Elem u = 0, u_inv = 0, a_prime = 0;
  RMatrix result;              // a' (+) 1
};

/// gamma * alpha * beta * (1 (+) u^-1) * epsilon == a' (+) 1 with
/// pi(a') == pi(a u^-1). Requires b, c, d - 1 in I.
DiagonalizationResult diagonalize_2x2(const LiftContext& ctx, const RMatrix& alpha);

/// One diagonalization stage in the lifting recursion, over `ring` (R itself or
/// M_2(R)).
struct LiftStage {
  int block = 1;               // k for the ring M_k(R) this stage works over
  DiagonalizationResult diag;
};

struct LiftCertificate {
  Elem x = 0;
  Elem y1 = 0;
  int m = 2;
  bool forced_m4 = false;
  ElemWord orbit;              // over R/I: orbit applied to pi(y1) (+) 1 gives pi(x) (+) 1
  ElemWord lifted;             // least-preimage lift over R
  RMatrix w1;
  std::vector<LiftStage> stages;
  Elem y = 0;
  int truncation = kSeparativityTruncation;
  bool oracle_confirmed = false;
};

struct LiftOutcome {
  std::optional<LiftCertificate> certificate;
  ZeroTest index_test;
  std::optional<K0Element> nonzero_index;
};

struct LiftOptions {
  bool allow_m4 = true;
  bool force_m4 = false;
};

/// Throws NotFredholm, HypothesisFailed, GuardExceeded.
LiftOutcome lift_unit(const LiftContext& ctx, Elem x, const LiftOptions& options = {});

/// Least unit y with x - y in I.
std::optional<Elem> oracle_lift(const Ideal& ideal, Elem x);

}  // namespace exlift
