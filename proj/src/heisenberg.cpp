#include "tracelab/heisenberg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tracelab {

HeisenbergGroup::HeisenbergGroup(const FFTower& tower, int genus, std::uint64_t capacity)
    : tower_(&tower), genus_(genus), capacity_(capacity), half_(tower.zero(1)) {
    if (genus < 0) throw DomainError("genus must be nonnegative");
    if (tower.p() != 2) half_ = tower_->inv(tower_->from_int(1, 2));
}

std::uint64_t HeisenbergGroup::order() const {
    std::uint64_t r = 1;
    for (int i = 0; i < 2 * genus_ + 1; ++i) r *= q();
    return r;
}

void HeisenbergGroup::check_sympl() const {
    if (tower_->p() == 2)
        throw PresentationError("the symplectic presentation needs odd characteristic");
}

void HeisenbergGroup::check_capacity() const {
    if (order() > capacity_) throw CapacityError("Heisenberg enumeration exceeds capacity");
}

FFElem HeisenbergGroup::dot(const std::vector<FFElem>& a, const std::vector<FFElem>& b) const {
    FFElem acc = tower_->zero(1);
    for (size_t i = 0; i < a.size(); ++i) acc = tower_->add(acc, tower_->mul(a[i], b[i]));
    return acc;
}

HeisElem HeisenbergGroup::identity(HeisElem::Presentation pres) const {
    if (pres == HeisElem::Presentation::Symplectic) check_sympl();
    return HeisElem{pres, std::vector<FFElem>(static_cast<size_t>(genus_), tower_->zero(1)),
                    std::vector<FFElem>(static_cast<size_t>(genus_), tower_->zero(1)),
                    tower_->zero(1)};
}

HeisElem HeisenbergGroup::make(HeisElem::Presentation pres, std::vector<FFElem> pvec,
                               std::vector<FFElem> qvec, FFElem scalar) const {
    if (pres == HeisElem::Presentation::Symplectic) check_sympl();
    if (static_cast<int>(pvec.size()) != genus_ || static_cast<int>(qvec.size()) != genus_)
        throw DomainError("Heisenberg vector arity mismatch");
    return HeisElem{pres, std::move(pvec), std::move(qvec), std::move(scalar)};
}

HeisElem HeisenbergGroup::compose(const HeisElem& a, const HeisElem& b) const {
    if (a.pres != b.pres) throw PresentationError("mixed presentations (convert first)");
    HeisElem r = a;
    for (int i = 0; i < genus_; ++i) {
        r.pvec[static_cast<size_t>(i)] =
            tower_->add(a.pvec[static_cast<size_t>(i)], b.pvec[static_cast<size_t>(i)]);
        r.qvec[static_cast<size_t>(i)] =
            tower_->add(a.qvec[static_cast<size_t>(i)], b.qvec[static_cast<size_t>(i)]);
    }
    if (a.pres == HeisElem::Presentation::Symplectic) {
        check_sympl();
        // t + t' + (p.q' - p'.q)/2
        FFElem form = tower_->sub(dot(a.pvec, b.qvec), dot(b.pvec, a.qvec));
        r.scalar = tower_->add(tower_->add(a.scalar, b.scalar), tower_->mul(half_, form));
    } else {
        // u + u' + p.q' from the unitriangular product
        r.scalar = tower_->add(tower_->add(a.scalar, b.scalar), dot(a.pvec, b.qvec));
    }
    return r;
}

HeisElem HeisenbergGroup::inverse(const HeisElem& a) const {
    HeisElem r = a;
    for (int i = 0; i < genus_; ++i) {
        r.pvec[static_cast<size_t>(i)] = tower_->neg(a.pvec[static_cast<size_t>(i)]);
        r.qvec[static_cast<size_t>(i)] = tower_->neg(a.qvec[static_cast<size_t>(i)]);
    }
    if (a.pres == HeisElem::Presentation::Symplectic) {
        r.scalar = tower_->neg(a.scalar);
    } else {
        r.scalar = tower_->sub(dot(a.pvec, a.qvec), a.scalar);
    }
    return r;
}

HeisElem HeisenbergGroup::change_presentation(const HeisElem& a) const {
    check_sympl();
    HeisElem r = a;
    const FFElem pq2 = tower_->mul(half_, dot(a.pvec, a.qvec));
    if (a.pres == HeisElem::Presentation::Symplectic) {
        r.pres = HeisElem::Presentation::Matrix;
        r.scalar = tower_->add(a.scalar, pq2); // u = t + pq/2
    } else {
        r.pres = HeisElem::Presentation::Symplectic;
        r.scalar = tower_->sub(a.scalar, pq2);
    }
    return r;
}

std::uint64_t HeisenbergGroup::index_of(const HeisElem& a) const {
    const HeisElem m =
        a.pres == HeisElem::Presentation::Matrix ? a : change_presentation(a);
    const std::uint64_t qq = q();
    std::uint64_t idx = tower_->index_of(m.scalar);
    for (size_t i = m.qvec.size(); i-- > 0;) idx = idx * qq + tower_->index_of(m.qvec[i]);
    for (size_t i = m.pvec.size(); i-- > 0;) idx = idx * qq + tower_->index_of(m.pvec[i]);
    return idx;
}

HeisElem HeisenbergGroup::element_at(std::uint64_t idx) const {
    const std::uint64_t qq = q();
    std::vector<FFElem> pv, qv;
    for (int i = 0; i < genus_; ++i) {
        pv.push_back(tower_->element_at(1, idx % qq));
        idx /= qq;
    }
    for (int i = 0; i < genus_; ++i) {
        qv.push_back(tower_->element_at(1, idx % qq));
        idx /= qq;
    }
    FFElem s = tower_->element_at(1, idx % qq);
    return HeisElem{HeisElem::Presentation::Matrix, std::move(pv), std::move(qv), std::move(s)};
}

HeisReport HeisenbergGroup::commutator_data() const {
    check_capacity();
    HeisReport rep;
    const std::uint64_t n = order();
    rep.order = n;
    const std::uint64_t qq = q();

    std::vector<HeisElem> elems;
    elems.reserve(static_cast<size_t>(n));
    for (std::uint64_t i = 0; i < n; ++i) elems.push_back(element_at(i));

    // Center.
    std::vector<std::uint64_t> center;
    for (std::uint64_t i = 0; i < n; ++i) {
        bool central = true;
        for (std::uint64_t j = 0; j < n && central; ++j)
            central = compose(elems[i], elems[j]) == compose(elems[j], elems[i]);
        if (central) center.push_back(i);
    }
    rep.center_size = center.size();

    // All single commutators [x, y].
    std::set<std::uint64_t> comms;
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) {
            const HeisElem c = compose(compose(elems[i], elems[j]),
                                       compose(inverse(elems[i]), inverse(elems[j])));
            comms.insert(index_of(c));
        }
    // Close under the group operation (single commutators already form the
    // subgroup here, but the closure makes the check independent of that).
    std::set<std::uint64_t> subgroup = comms;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint64_t> cur(subgroup.begin(), subgroup.end());
        for (std::uint64_t a : cur)
            for (std::uint64_t b : cur) {
                std::uint64_t ab = index_of(compose(elems[a], elems[b]));
                if (subgroup.insert(ab).second) grew = true;
            }
    }
    rep.commutator_size = subgroup.size();
    rep.abelianization_size = n / rep.commutator_size;
    rep.commutator_width_one =
        std::includes(comms.begin(), comms.end(), subgroup.begin(), subgroup.end());

    std::set<std::uint64_t> center_set(center.begin(), center.end());
    rep.center_equals_commutator = (genus_ >= 1) && (center_set == subgroup);

    // The scalar line {(0, 0, u)}.
    std::set<std::uint64_t> line;
    for (std::uint64_t u = 0; u < qq; ++u) {
        HeisElem e = identity(HeisElem::Presentation::Matrix);
        e.scalar = tower_->element_at(1, u);
        line.insert(index_of(e));
    }
    rep.center_is_scalar_line = (genus_ >= 1) ? (center_set == line) : true;

    // [A_lambda, B] = C_lambda with the generator pair supported on the first
    // coordinate.
    rep.a_b_c_identity = true;
    if (genus_ >= 1) {
        for (std::uint64_t l = 0; l < qq; ++l) {
            HeisElem A = identity(HeisElem::Presentation::Matrix);
            A.pvec[0] = tower_->element_at(1, l);
            HeisElem B = identity(HeisElem::Presentation::Matrix);
            B.qvec[0] = tower_->one(1);
            HeisElem C = identity(HeisElem::Presentation::Matrix);
            C.scalar = tower_->element_at(1, l);
            const HeisElem c = compose(compose(A, B), compose(inverse(A), inverse(B)));
            if (c != C) {
                rep.a_b_c_identity = false;
                break;
            }
        }
    }

    rep.character_count = character_count();
    rep.class_count = conjugacy_classes();

    // Sum of squared irreducible degrees: the linear characters contribute 1
    // each and the remaining classes must each carry degree q^g.
    if (genus_ >= 1) {
        const std::uint64_t nonlinear = rep.class_count - rep.character_count;
        std::uint64_t qg = 1;
        for (int i = 0; i < genus_; ++i) qg *= qq;
        rep.degree_sum_ok = rep.character_count + nonlinear * qg * qg == n;
    } else {
        rep.degree_sum_ok = rep.class_count == qq && rep.character_count == qq;
    }
    return rep;
}

std::uint64_t HeisenbergGroup::character_count() const {
    check_capacity();
    const std::uint64_t n = order();
    const std::uint64_t qq = q();

    // A homomorphism into C^* kills every commutator, so it factors through
    // the abelianization.  Conversely each character of the quotient pulls
    // back.  We count by explicit construction: lift the q^{2g} candidate
    // characters (w, s) -> psi(<v, w>) and check multiplicativity on all
    // pairs; each element of the quotient has order p, so the values on a
    // basis determine everything and there can be no others.
    if (genus_ == 0) return qq;

    std::vector<HeisElem> elems;
    for (std::uint64_t i = 0; i < n; ++i) elems.push_back(element_at(i));

    // Composition table once; each candidate then costs n^2 table lookups.
    std::vector<std::uint32_t> comp(static_cast<size_t>(n) * n);
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j)
            comp[static_cast<size_t>(i) * n + j] =
                static_cast<std::uint32_t>(index_of(compose(elems[i], elems[j])));

    const unsigned p = tower_->p();
    std::uint64_t count = 0;
    std::uint64_t total_candidates = 1;
    for (int i = 0; i < 2 * genus_; ++i) total_candidates *= qq;

    std::vector<std::uint32_t> chi(static_cast<size_t>(n));
    for (std::uint64_t v = 0; v < total_candidates; ++v) {
        // candidate character: x -> zeta_p^{Tr(cp . x.p + cq . x.q)}
        std::uint64_t vv = v;
        std::vector<FFElem> cp, cq;
        for (int i = 0; i < genus_; ++i) {
            cp.push_back(tower_->element_at(1, vv % qq));
            vv /= qq;
        }
        for (int i = 0; i < genus_; ++i) {
            cq.push_back(tower_->element_at(1, vv % qq));
            vv /= qq;
        }
        for (std::uint64_t i = 0; i < n; ++i) {
            FFElem acc = tower_->add(dot(cp, elems[i].pvec), dot(cq, elems[i].qvec));
            chi[static_cast<size_t>(i)] = tower_->abs_trace(acc);
        }
        bool hom = true;
        for (std::uint64_t i = 0; i < n && hom; ++i)
            for (std::uint64_t j = 0; j < n && hom; ++j)
                hom = chi[static_cast<size_t>(comp[static_cast<size_t>(i) * n + j])] ==
                      (chi[static_cast<size_t>(i)] + chi[static_cast<size_t>(j)]) % p;
        if (hom) ++count;
    }
    return count;
}

std::uint64_t HeisenbergGroup::conjugacy_classes() const {
    check_capacity();
    const std::uint64_t n = order();
    std::vector<HeisElem> elems;
    for (std::uint64_t i = 0; i < n; ++i) elems.push_back(element_at(i));

    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::uint64_t classes = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        ++classes;
        for (std::uint64_t g = 0; g < n; ++g) {
            const HeisElem conj =
                compose(compose(elems[g], elems[i]), inverse(elems[g]));
            seen[static_cast<size_t>(index_of(conj))] = true;
        }
    }
    return classes;
}

} // namespace tracelab
