#include "coarseprox/model.hpp"

namespace coarseprox {

ExactDist distance(const MetricModel& model, const Point& p, const Point& q) {
    if (p.dim != model.dim() || q.dim != model.dim())
        throw std::invalid_argument("distance: dimension mismatch");
    return ExactDist::from_sq(sq_dist(p, q));
}

std::string MetricModel::kind_name() const {
    switch (kind) {
        case ModelKind::EuclideanReal1: return "euclidean-1";
        case ModelKind::EuclideanReal2: return "euclidean-2";
        case ModelKind::EuclideanReal3: return "euclidean-3";
        case ModelKind::IntegerLattice1: return "lattice-1";
        case ModelKind::IntegerLattice2: return "lattice-2";
        case ModelKind::IntegerLattice3: return "lattice-3";
        case ModelKind::NaturalLine: return "natural-line";
        case ModelKind::IntegerLine: return "integer-line";
    }
    return "?";
}

std::optional<ModelKind> model_kind_from_name(const std::string& name) {
    if (name == "euclidean-1") return ModelKind::EuclideanReal1;
    if (name == "euclidean-2") return ModelKind::EuclideanReal2;
    if (name == "euclidean-3") return ModelKind::EuclideanReal3;
    if (name == "lattice-1" || name == "integer-lattice-1") return ModelKind::IntegerLattice1;
    if (name == "lattice-2" || name == "integer-lattice-2") return ModelKind::IntegerLattice2;
    if (name == "lattice-3" || name == "integer-lattice-3") return ModelKind::IntegerLattice3;
    if (name == "natural-line") return ModelKind::NaturalLine;
    if (name == "integer-line") return ModelKind::IntegerLine;
    return std::nullopt;
}

}  // namespace coarseprox
