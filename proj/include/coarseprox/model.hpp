#pragma once

// Ground metric models: Euclidean R^n (n <= 3) with designated lattice
// support, the integer lattices, and the natural/integer lines, each with a
// basepoint. Enumeration of any tame set inside a ball is exact.

#include <optional>
#include <string>

#include "coarseprox/geometry.hpp"

namespace coarseprox {

enum class ModelKind {
    EuclideanReal1,
    EuclideanReal2,
    EuclideanReal3,
    IntegerLattice1,
    IntegerLattice2,
    IntegerLattice3,
    NaturalLine,
    IntegerLine,
};

struct MetricModel {
    ModelKind kind = ModelKind::NaturalLine;
    Point basepoint;

    MetricModel() { basepoint = Point::integer1(0); }
    MetricModel(ModelKind k, Point x0) : kind(k), basepoint(x0) {
        if (basepoint.dim != dim()) throw std::invalid_argument("basepoint dimension mismatch");
        check_point(basepoint);
    }
    explicit MetricModel(ModelKind k) : kind(k) {
        basepoint = Point{dim(), {0, 0, 0}};
    }

    int dim() const {
        switch (kind) {
            case ModelKind::EuclideanReal1:
            case ModelKind::NaturalLine:
            case ModelKind::IntegerLine:
            case ModelKind::IntegerLattice1: return 1;
            case ModelKind::EuclideanReal2:
            case ModelKind::IntegerLattice2: return 2;
            case ModelKind::EuclideanReal3:
            case ModelKind::IntegerLattice3: return 3;
        }
        return 1;
    }

    // Whether half-integer points are admissible set members (Euclidean
    // models carry a half-integer support grid; lattice/line models are
    // integer only).
    bool allows_halves() const {
        return kind == ModelKind::EuclideanReal1 || kind == ModelKind::EuclideanReal2 ||
               kind == ModelKind::EuclideanReal3;
    }

    bool valid_point(const Point& p) const {
        if (p.dim != dim()) return false;
        if (kind == ModelKind::NaturalLine && p.h[0] < 0) return false;
        if (!allows_halves() && !p.is_integer()) return false;
        return true;
    }

    void check_point(const Point& p) const {
        if (!valid_point(p)) throw std::invalid_argument("point not valid in model: " + p.str());
    }

    std::string kind_name() const;
};

ExactDist distance(const MetricModel& model, const Point& p, const Point& q);

std::optional<ModelKind> model_kind_from_name(const std::string& name);

}  // namespace coarseprox
