#pragma once

#include "specklab/events.hpp"
#include "specklab/functional.hpp"

#include <map>
#include <utility>
#include <vector>

namespace specklab {

/// Affine coordinates of the no-disturbance model space: one coordinate
/// q(T; c) per nonempty measurement set T inside some context and outcome
/// pattern c in {0..k-2}^T, the marginal probability of c on T. Every valid
/// model is determined by its q values and every q vector gives a point of
/// the affine hull, so functionals agree on all valid models iff their
/// reduced forms coincide.
class ReducedCoordinates {
public:
    explicit ReducedCoordinates(MarginalScenario scenario);

    const MarginalScenario& scenario() const { return space_.scenario(); }
    const EventSpace& events() const { return space_; }
    std::size_t dimension() const { return labels_.size(); }
    /// Coordinate labels ordered by |T|, then T, then c.
    const std::vector<GeneralizedEvent>& labels() const { return labels_; }

    /// q(p), read from the smallest context containing each T.
    RationalVector point(const RationalVector& event_values) const;

    /// (r_1..r_D, r_0) with f(p) = r_0 + sum_j r_j q_j(p) on every model
    /// satisfying normalization and no-disturbance.
    RationalVector reduce(const LinearFunctional& f) const;

    /// The reduced vector as an event functional (each q_j expanded in the
    /// smallest context containing T).
    LinearFunctional to_functional(const RationalVector& reduced) const;

    /// Primitive integer form of reduce(f); positive scaling only, so the
    /// direction of an inequality f >= 0 is preserved.
    std::vector<Integer> canonical_form(const LinearFunctional& f) const;

private:
    struct Expansion {
        Rational constant;
        std::vector<std::pair<std::size_t, Rational>> terms;
    };

    EventSpace space_;
    std::vector<GeneralizedEvent> labels_;
    std::map<GeneralizedEvent, std::size_t> index_;
    std::vector<Expansion> expansion_;  // p(v) in terms of q, per event
};

}  // namespace specklab
