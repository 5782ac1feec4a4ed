#pragma once

#include <string>

#include "error.hpp"
#include "hilbert_series.hpp"
#include "ideal.hpp"

namespace gmseq {

/// M = R/K for a proper homogeneous ideal K.
class CyclicModule {
public:
    CyclicModule(Ideal k, bool equidimensional_asserted = false)
        : k_(std::move(k)), equidimensional_(equidimensional_asserted) {
        if (!k_.is_homogeneous()) throw PreconditionError("module ideal K must be homogeneous");
        if (k_.is_unit()) throw PreconditionError("module ideal K must be proper");
        d_ = krull_dimension(k_);
    }

    /// M = R.
    static CyclicModule free(const PolyRing& ring) { return CyclicModule(Ideal(ring), true); }

    const PolyRing& ring() const noexcept { return k_.ring(); }
    const Ideal& annihilator() const noexcept { return k_; }
    int dimension() const noexcept { return d_; }
    bool equidimensional_asserted() const noexcept { return equidimensional_; }

private:
    Ideal k_;
    int d_ = 0;
    bool equidimensional_ = false;
};

/// Graded module A/L for homogeneous ideals L contained in A. Covers the
/// modules reached from a cyclic M by the constructions in the engine:
/// I^n M = (I^n + K)/K and I^n M / x I^n M = (I^n + K)/(x I^n + K).
class Subquotient {
public:
    Subquotient(Ideal numerator, Ideal denominator) : a_(std::move(numerator)), l_(std::move(denominator)) {
        require_same_ring(a_.ring(), l_.ring());
        if (!a_.is_homogeneous() || !l_.is_homogeneous()) throw PreconditionError("subquotient ideals must be homogeneous");
        if (!a_.contains(l_)) throw PreconditionError("subquotient denominator is not contained in the numerator");
        HilbertSeries diff{poly_sub(l_.hilbert_series().numerator, a_.hilbert_series().numerator),
                           static_cast<unsigned>(a_.ring().nvars())};
        d_ = diff.dimension();
    }

    explicit Subquotient(const CyclicModule& m) : Subquotient(Ideal::unit(m.ring()), m.annihilator()) {}

    const PolyRing& ring() const noexcept { return a_.ring(); }
    const Ideal& numerator() const noexcept { return a_; }
    const Ideal& denominator() const noexcept { return l_; }
    /// Krull dimension; -1 for the zero module.
    int dimension() const noexcept { return d_; }
    bool is_zero() const noexcept { return d_ < 0; }

private:
    Ideal a_;
    Ideal l_;
    int d_ = -1;
};

} // namespace gmseq
