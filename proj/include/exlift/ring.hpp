#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace exlift {

using json = nlohmann::json;

/// Index of an element in the carrier of its owning ring.
using Elem = std::uint32_t;

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/// Size bounds shared by every exhaustive routine. EXLIFT_GUARD (read on first
/// access) overrides `carrier`.
struct Guards {
  std::size_t carrier = 65536;      // largest ring that may be constructed
  std::size_t search = 1u << 24;    // candidate count for one brute-force search
  std::size_t orbit = 1u << 22;     // nodes in one elementary-orbit cache
  std::size_t table = 1024;         // rings up to this size get full op tables
};

Guards& guards();

class FiniteRing {
 public:
  enum class Kind { ZMod, Matrix, Triangular, Product, Quotient, Corner, Opposite };

  std::size_t size() const noexcept { return size_; }
  Elem zero() const noexcept { return zero_; }
  Elem one() const noexcept { return one_; }
  Kind kind() const noexcept { return kind_; }

  Elem add(Elem a, Elem b) const {
    return add_table_.empty() ? compute_add(a, b) : add_table_[a * size_ + b];
  }
  Elem mul(Elem a, Elem b) const {
    return mul_table_.empty() ? compute_mul(a, b) : mul_table_[a * size_ + b];
  }
  Elem neg(Elem a) const { return neg_table_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul3(Elem a, Elem b, Elem c) const { return mul(mul(a, b), c); }

  bool valid(Elem a) const noexcept { return a < size_; }

  // Memoized element classes, ascending by index.
  const std::vector<Elem>& units() const;
  const std::vector<Elem>& idempotents() const;
  bool is_unit(Elem a) const { return inverse(a).has_value(); }
  std::optional<Elem> inverse(Elem a) const;
  bool is_idempotent(Elem a) const { return mul(a, a) == a; }

  /// Structural recipe (ring-spec JSON) this ring was built from.
  const json& descriptor() const noexcept { return descriptor_; }
  json describe(Elem a) const;
  Elem parse_element(const json& j) const;
  std::string label(Elem a) const { return describe(a).dump(); }

  // Structural parts; which ones are set depends on kind().
  const RingPtr& base() const noexcept { return base_; }
  const RingPtr& second() const noexcept { return second_; }
  int dim() const noexcept { return dim_; }

  /// For a quotient R/I: the natural surjection R -> R/I.
  Elem project(Elem parent_elem) const;
  /// For a quotient R/I: the least-index preimage of a coset.
  Elem lift(Elem coset) const;
  /// For a corner eRe: embeds an element back into the parent ring.
  Elem embed(Elem a) const;
  /// For a corner eRe: index of a parent element lying in eRe.
  std::optional<Elem> from_parent(Elem parent_elem) const;

  // Matrix and triangular rings: entry access in row-major order.
  std::vector<Elem> entries(Elem a) const;
  Elem from_entries(std::span<const Elem> entries) const;

  // Product rings.
  std::pair<Elem, Elem> components(Elem a) const;
  Elem pair(Elem left, Elem right) const;

  struct Access;  // construction helpers, defined in ring.cpp

 private:
  friend RingPtr zmod(std::size_t n);
  friend RingPtr make_matrix_like(const RingPtr& base, int k, bool triangular);
  friend RingPtr product_ring(const RingPtr& left, const RingPtr& right);
  friend RingPtr opposite_ring(const RingPtr& ring);
  friend RingPtr corner_ring(const RingPtr& ring, Elem e);
  friend RingPtr quotient_ring(const class Ideal& ideal);

  FiniteRing() = default;

  Elem compute_add(Elem a, Elem b) const;
  Elem compute_mul(Elem a, Elem b) const;
  void finalize();

  Kind kind_ = Kind::ZMod;
  std::size_t size_ = 1;
  Elem zero_ = 0;
  Elem one_ = 0;
  json descriptor_;

  RingPtr base_;
  RingPtr second_;
  int dim_ = 0;
  std::vector<Elem> reps_;       // quotient reps or corner members (parent indices)
  std::vector<Elem> back_map_;   // parent index -> coset / corner index
  std::size_t slots_ = 0;        // stored entries for matrix/triangular

  std::vector<Elem> add_table_, mul_table_, neg_table_;

  mutable std::once_flag units_once_, idem_once_;
  mutable std::vector<Elem> units_, idempotents_, inverse_;
};

RingPtr zmod(std::size_t n);
RingPtr matrix_ring(const RingPtr& base, int k);
RingPtr triangular_ring(const RingPtr& base, int k);
RingPtr product_ring(const RingPtr& left, const RingPtr& right);
RingPtr opposite_ring(const RingPtr& ring);
/// The corner ring eRe with identity e.
RingPtr corner_ring(const RingPtr& ring, Elem e);

class Ideal;
/// The ring of additive cosets R/I, each coset named by its least member.
RingPtr quotient_ring(const Ideal& ideal);

bool same_ring(const FiniteRing& a, const FiniteRing& b);

/// Exhaustive check of the unital ring axioms; returns a description of the
/// first violated law, or nullopt.
std::optional<std::string> check_ring_axioms(const FiniteRing& ring);

/// Right principal ideal aR, as a sorted element list.
std::vector<Elem> right_multiples(const FiniteRing& ring, Elem a);
/// Left principal ideal Ra, as a sorted element list.
std::vector<Elem> left_multiples(const FiniteRing& ring, Elem a);

/// Least y with x*y*x == x.
std::optional<Elem> regular_witness(const FiniteRing& ring, Elem x);

class Ideal {
 public:
  /// Two-sided closure of the generators.
  static Ideal closure(const RingPtr& ring, std::span<const Elem> generators);
  /// Wraps a known member set; closure and generation are verified.
  static Ideal from_members(const RingPtr& ring, std::vector<Elem> members,
                            std::vector<Elem> generators = {});
  static Ideal zero(const RingPtr& ring);
  static Ideal whole(const RingPtr& ring);

  const RingPtr& ring() const noexcept { return ring_; }
  bool contains(Elem a) const { return a < mask_.size() && mask_[a]; }
  const std::vector<Elem>& members() const noexcept { return members_; }
  const std::vector<Elem>& generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool is_zero() const noexcept { return members_.size() == 1; }
  bool is_whole() const noexcept { return members_.size() == ring_->size(); }

  /// Same member set, viewed in another ring over the same carrier (used for
  /// the opposite ring).
  Ideal rebind(const RingPtr& ring) const;

  json generators_json() const;

 private:
  RingPtr ring_;
  std::vector<Elem> members_;
  std::vector<Elem> generators_;
  std::vector<bool> mask_;
};

/// Two-sided ideal RaR.
Ideal principal_ideal(const RingPtr& ring, Elem a);

}  // namespace exlift
