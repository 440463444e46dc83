#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracelab/finite_field.hpp"

namespace tracelab {

// Heisenberg group over F_q in genus g: the central extension of the standard
// symplectic space F_q^{2g} by F_q.  Two presentations are carried:
//
//   symplectic (odd p only):  (w, t) * (w', t') = (w + w', t + t' + <w,w'>/2)
//                             with <(*p*,q),(p',q')> = p.q' - p'.q,
//   matrix:                   unitriangular [[1, p, u], [0, I_g, q], [0, 0, 1]]
//                             with cocycle p.q' on the corner.
//
// The substitution u = t + p.q/2 identifies the two when p is odd.  In
// characteristic 2 the 1/2 is meaningless and only the matrix presentation
// exists.
class HeisenbergGroup;

struct HeisElem {
    enum class Presentation { Symplectic, Matrix };
    Presentation pres;
    std::vector<FFElem> pvec; // g entries, level 1
    std::vector<FFElem> qvec; // g entries, level 1
    FFElem scalar;            // t (symplectic) or u (matrix corner)

    bool operator==(const HeisElem& o) const {
        return pres == o.pres && pvec == o.pvec && qvec == o.qvec && scalar == o.scalar;
    }
    bool operator!=(const HeisElem& o) const { return !(*this == o); }
};

struct HeisReport {
    std::uint64_t order = 0;
    std::uint64_t center_size = 0;
    std::uint64_t commutator_size = 0;
    std::uint64_t abelianization_size = 0;
    bool center_equals_commutator = false;
    bool center_is_scalar_line = false; // center = {(0, t)}
    bool commutator_width_one = false;  // every central element is one commutator
    bool a_b_c_identity = false;        // [A_lambda, B] = C_lambda for all lambda
    std::uint64_t character_count = 0;  // homomorphisms into C^*
    std::uint64_t class_count = 0;
    bool degree_sum_ok = false;         // |G| = (#linear) + (q-1) q^{2g} for g >= 1
};

class HeisenbergGroup {
  public:
    HeisenbergGroup(const FFTower& tower, int genus, std::uint64_t capacity = (1ull << 15));

    const FFTower& tower() const { return *tower_; }
    int genus() const { return genus_; }
    std::uint64_t q() const { return tower_->level_size(1); }
    std::uint64_t order() const; // q^{2g+1}

    HeisElem identity(HeisElem::Presentation pres) const;
    HeisElem make(HeisElem::Presentation pres, std::vector<FFElem> pvec, std::vector<FFElem> qvec,
                  FFElem scalar) const;

    HeisElem compose(const HeisElem& a, const HeisElem& b) const;
    HeisElem inverse(const HeisElem& a) const;
    HeisElem change_presentation(const HeisElem& a) const; // PresentationError when p = 2

    // Deterministic element <-> index bijection (matrix presentation).
    std::uint64_t index_of(const HeisElem& a) const;
    HeisElem element_at(std::uint64_t idx) const;

    // Full brute-force structure report (center, commutators, characters,
    // classes).  CapacityError if q^{2g+1} exceeds the bound.
    HeisReport commutator_data() const;

    std::uint64_t character_count() const;
    std::uint64_t conjugacy_classes() const;

  private:
    void check_sympl() const;
    FFElem dot(const std::vector<FFElem>& a, const std::vector<FFElem>& b) const;
    void check_capacity() const;

    const FFTower* tower_;
    int genus_;
    std::uint64_t capacity_;
    FFElem half_; // 1/2 in F_q for odd p
};

} // namespace tracelab
