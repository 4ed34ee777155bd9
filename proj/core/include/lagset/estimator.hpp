/**
 * Measurement-driven estimator wrapper around the set recursion.
 *
 * The reachable set starts as a single point and stays lower dimensional
 * for the first few measurements, where the facet table does not apply.
 * Until the set reaches full affine rank it is carried as an extreme-point
 * cloud updated by direct clipping and Minkowski arithmetic; once full
 * dimensional it is promoted to the (V, F, h, I) polytope and the
 * combinatorial step takes over. A degenerate cut (slab touching the set
 * in a face) demotes back to the cloud for that step.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>

#include "lagset/errors.hpp"
#include "lagset/linalg.hpp"
#include "lagset/mode.hpp"
#include "lagset/plant.hpp"
#include "lagset/polytope.hpp"
#include "lagset/recursion.hpp"
#include "lagset/vrep.hpp"

namespace lagset {

template <class S>
class Estimator {
  public:
    enum class Backing { Interval, Points, Facets };

    Estimator(PlantModel<S> plant, Vec<S> x0, StepMode mode)
        : plant_(std::move(plant)), mode_(mode), m_(plant_.m) {
        if (m_ == 1) {
            backing_ = Backing::Interval;
            lo_ = hi_ = x0(0);
        } else {
            backing_ = Backing::Points;
            pts_ = Mat<S>(m_, 1);
            pts_.col(0) = x0;
        }
        pr_ = primal_realization(plant_);
    }

    /// Consume one measurement. Throws InfeasibleMeasurement when the slab
    /// misses the set entirely.
    void observe(const S& z) {
        const bool first = (k_ == 0);
        last_report_.reset();
        if (backing_ == Backing::Interval)
            interval_observe(z, first);
        else if (backing_ == Backing::Points) {
            points_observe(z, first);
            try_promote();
        } else
            facets_observe(z);
        ++k_;
    }

    int measurements() const { return k_; }
    StepMode mode() const { return mode_; }
    Backing backing() const { return backing_; }
    const char* backing_name() const {
        switch (backing_) {
            case Backing::Interval: return "interval";
            case Backing::Points: return "points";
            default: return "facets";
        }
    }
    const PlantModel<S>& plant() const { return plant_; }

    const Polytope<S>& polytope() const { return set_; }  // valid for Backing::Facets
    std::pair<S, S> interval() const { return {lo_, hi_}; }

    /// Extreme points of the current set, one per column.
    Mat<S> points() const {
        if (backing_ == Backing::Facets) return set_.V;
        if (backing_ == Backing::Points) return pts_;
        Mat<S> P(1, eq(lo_, hi_) ? 1 : 2);
        P(0, 0) = lo_;
        if (P.cols() == 2) P(0, 1) = hi_;
        return P;
    }

    bool contains(const Vec<S>& x) const {
        if (backing_ == Backing::Interval) return le(lo_, x(0)) && le(x(0), hi_);
        if (backing_ == Backing::Facets) return contains_point<S>(set_, x);
        return hull_contains<S>(pts_, x);
    }

    const std::optional<StepReport>& last_report() const { return last_report_; }

  private:
    void interval_observe(const S& z, bool first) {
        if (mode_ == StepMode::UpdateThenPropagate) {
            std::tie(lo_, hi_) = interval_step<S>(lo_, hi_, z, plant_);
        } else if (first) {
            std::tie(lo_, hi_) = interval_cut<S>(lo_, hi_, z, plant_);
        } else {
            std::tie(lo_, hi_) = interval_prop<S>(lo_, hi_, plant_);
            std::tie(lo_, hi_) = interval_cut<S>(lo_, hi_, z, plant_);
        }
    }

    Mat<S> clip_slab(Mat<S> P, const S& z) const {
        P = clip_points<S>(std::move(P), pr_.C, S(z + S(1)));
        if (P.cols() == 0) throw InfeasibleMeasurement();
        P = clip_points<S>(std::move(P), Vec<S>(-pr_.C), S(S(1) - z));
        if (P.cols() == 0) throw InfeasibleMeasurement();
        return P;
    }

    Mat<S> propagate_points(const Mat<S>& P) const {
        return minkowski_segment<S>(Mat<S>(pr_.A * P), pr_.B);
    }

    void points_observe(const S& z, bool first) {
        if (mode_ == StepMode::UpdateThenPropagate) {
            pts_ = propagate_points(clip_slab(pts_, z));
        } else if (first) {
            pts_ = clip_slab(pts_, z);
        } else {
            pts_ = clip_slab(propagate_points(pts_), z);
        }
    }

    void facets_observe(const S& z) {
        try {
            auto [next, rep] = step<S>(set_, z, plant_, mode_);
            set_ = std::move(next);
            last_report_ = std::move(rep);
        } catch (const DegenerateCut&) {
            // slab boundary touched the set in a face: redo on the cloud
            pts_ = set_.V;
            backing_ = Backing::Points;
            points_observe(z, false);
            try_promote();
        }
    }

    void try_promote() {
        if (affine_rank<S>(pts_) != m_) return;
        set_ = polytope_from_points<S>(pts_);
        backing_ = Backing::Facets;
        pts_.resize(0, 0);
    }

    PlantModel<S> plant_;
    PrimalRealization<S> pr_;
    StepMode mode_;
    int m_;
    int k_ = 0;
    Backing backing_;
    S lo_{0}, hi_{0};
    Mat<S> pts_;
    Polytope<S> set_;
    std::optional<StepReport> last_report_;
};

}  // namespace lagset
