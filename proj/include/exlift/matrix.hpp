#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "exlift/ring.hpp"

namespace exlift {

/// Square matrix over a finite ring, stored row-major.
class RMatrix {
 public:
  /// Empty 0x0 placeholder with no ring.
  RMatrix() = default;
  RMatrix(RingPtr ring, int n);

  static RMatrix identity(const RingPtr& ring, int n);
  static RMatrix from_rows(const RingPtr& ring,
                           std::initializer_list<std::initializer_list<Elem>> rows);
  static RMatrix diag(const RingPtr& ring, std::span<const Elem> d);
  static RMatrix scalar(const RingPtr& ring, Elem a) { return diag(ring, std::span<const Elem>(&a, 1)); }
  /// Single-entry matrix r*e_ij (0-based).
  static RMatrix unit_entry(const RingPtr& ring, int n, int i, int j, Elem r);
  /// 1_n + r*e_ij (0-based, i != j).
  static RMatrix elementary(const RingPtr& ring, int n, int i, int j, Elem r);

  int n() const noexcept { return n_; }
  const RingPtr& ring() const noexcept { return ring_; }
  const FiniteRing& R() const noexcept { return *ring_; }

  Elem operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
  Elem& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
  std::span<const Elem> entries() const noexcept { return entries_; }

  bool is_zero() const;
  bool is_identity() const;
  bool is_idempotent() const;
  bool entries_in(const Ideal& ideal) const;

  json to_json() const;
  static RMatrix from_json(const RingPtr& ring, const json& j);

  friend bool operator==(const RMatrix& a, const RMatrix& b);

 private:
  RingPtr ring_;
  int n_ = 0;
  std::vector<Elem> entries_;
};

RMatrix operator*(const RMatrix& a, const RMatrix& b);
RMatrix operator+(const RMatrix& a, const RMatrix& b);
RMatrix operator-(const RMatrix& a, const RMatrix& b);
RMatrix operator-(const RMatrix& a);
/// Left scalar multiple r*A and right scalar multiple A*r.
RMatrix scale_left(Elem r, const RMatrix& a);
RMatrix scale_right(const RMatrix& a, Elem r);
/// Block sum x (+) y.
RMatrix direct_sum(const RMatrix& x, const RMatrix& y);
RMatrix transpose(const RMatrix& a);
/// Same entries, reinterpreted over another ring with the same carrier.
RMatrix rebind(const RMatrix& a, const RingPtr& ring);
/// Entrywise image under f, landing in `target`.
RMatrix map_entries(const RMatrix& a, const RingPtr& target,
                    const std::function<Elem(Elem)>& f);
/// Entrywise natural surjection R -> R/I, where `quotient` is R/I.
RMatrix project(const RMatrix& a, const RingPtr& quotient);

/// Two-sided inverse, found by solving A*X = 1 column by column over the
/// carrier. Throws GuardExceeded when |R|^n exceeds the search guard.
std::optional<RMatrix> try_inverse(const RMatrix& a);

// Block views between M_{2k}(R) and M_2(M_k(R)) for a matrix ring S = M_k(R).
RMatrix to_blocks(const RMatrix& big, const RingPtr& block_ring);
RMatrix from_blocks(const RMatrix& blocks);

// ---------------------------------------------------------------------------
// elementary words

enum class Side { Left, Right };

/// The elementary matrix 1 + r*e_ij applied on one side. Indices are 0-based
/// in memory and 1-based in serialized form.
struct ElemOp {
  Side side = Side::Right;
  int i = 0;
  int j = 1;
  Elem r = 0;

  friend bool operator==(const ElemOp&, const ElemOp&) = default;
};

/// Left ops multiply on the left and right ops on the right, each in list
/// order.
struct ElemWord {
  int n = 2;
  std::vector<ElemOp> ops;

  bool empty() const noexcept { return ops.empty(); }
  std::size_t size() const noexcept { return ops.size(); }

  /// Appends the product F1*F2*...*Fk on the given side, where each factor is
  /// (i, j, r). Left products are stored innermost factor first.
  void multiply(Side side, std::initializer_list<ElemOp> factors);
  void append(const ElemWord& other);

  friend bool operator==(const ElemWord&, const ElemWord&) = default;
};

RMatrix apply_elem_word(const RMatrix& a, const ElemWord& w);
/// Product of the word's matrices: apply_elem_word(1_n, w).
RMatrix evaluate(const RingPtr& ring, const ElemWord& w);
/// Reversed word with negated parameters; undoes apply_elem_word.
ElemWord inverse_word(const FiniteRing& ring, const ElemWord& w);
bool word_in_ideal(const ElemWord& w, const Ideal& ideal);
ElemWord map_word(const ElemWord& w, const std::function<Elem(Elem)>& f);
/// Same word with every op flipped to the other side and indices swapped:
/// the transpose image over the opposite ring.
ElemWord transpose_word(const ElemWord& w);

/// The signed permutation (0 1; -1 0) as e12(1) e21(-1) e12(1), and its
/// inverse (0 -1; 1 0) as e12(-1) e21(1) e12(-1).
void multiply_sigma(ElemWord& w, const FiniteRing& ring, Side side);
void multiply_sigma_inverse(ElemWord& w, const FiniteRing& ring, Side side);

json word_to_json(const ElemWord& w, const FiniteRing& ring);
ElemWord word_from_json(const json& j, const FiniteRing& ring);

/// A word w of left ops with apply_elem_word(b, w) == a, found by
/// breadth-first search in the Cayley graph of E_n(R) generated by every
/// 1 + r*e_ij with r != 0. Absent when a is not in E_n(R)*b.
std::optional<ElemWord> e_orbit_factor(const RingPtr& ring, int n, const RMatrix& a,
                                       const RMatrix& b);

/// Number of nodes currently cached for (ring, n); for diagnostics.
std::size_t orbit_cache_size(const RingPtr& ring, int n);

}  // namespace exlift
