#pragma once

// Finite small-scale proximity spaces: exhaustive axiom checking over the
// powerset, closure operators, proximity maps, and the coarsest proximity on
// the domain making a map proximal. Ground sets are capped at 8 points so
// the strong-axiom search stays within seconds.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace coarseprox {

using mask_t = std::uint32_t;

class FiniteProximitySpace {
public:
    explicit FiniteProximitySpace(int ground_size);

    int ground_size() const { return n_; }
    int subset_count() const { return 1 << n_; }

    // Symmetric closure is applied; relations involving the empty set are
    // rejected at construction.
    void relate(mask_t a, mask_t b);
    bool related(mask_t a, mask_t b) const;

    static FiniteProximitySpace discrete(int n);
    // A related to B iff some cross pair has distance <= threshold.
    static FiniteProximitySpace metric_threshold(const std::vector<std::vector<int>>& dist,
                                                 int threshold);

private:
    int n_;
    std::vector<bool> rel_;
    size_t idx(mask_t a, mask_t b) const { return (static_cast<size_t>(a) << n_) | b; }
};

struct SsAxiomReport {
    bool symmetry = false;
    bool union_axiom = false;
    bool nonempty = false;
    bool strong = false;
    bool intersection = false;
    std::string counterexample;
    bool all() const { return symmetry && union_axiom && nonempty && strong && intersection; }
};
SsAxiomReport check_ss_axioms(const FiniteProximitySpace& P);

mask_t closure(const FiniteProximitySpace& P, mask_t A);

struct ProxMapCheck {
    bool ok = true;
    mask_t a = 0, b = 0;  // violating pair when !ok
};
// f maps ground points of P to ground points of Q.
ProxMapCheck check_prox_map(const std::vector<int>& f, const FiniteProximitySpace& P,
                            const FiniteProximitySpace& Q);

mask_t image_mask(const std::vector<int>& f, mask_t a, int domain_size);
mask_t preimage_mask(const std::vector<int>& f, mask_t c, int domain_size);

// The coarsest proximity on the domain making f proximal into Q: A and B
// fail to be related exactly when some C in the codomain has f(A) away from
// its complement and pulls back inside the complement of B.
FiniteProximitySpace induced_domain_prox(const std::vector<int>& f,
                                         const FiniteProximitySpace& Q, int domain_size);

// Pullback relation: A related to B iff their images are; always a proximity
// making f proximal, used as the comparison point for coarsest-ness.
FiniteProximitySpace pullback_prox(const std::vector<int>& f, const FiniteProximitySpace& Q,
                                   int domain_size);

// True when every related pair of P is related in Q (P finer than Q).
bool finer_than(const FiniteProximitySpace& P, const FiniteProximitySpace& Q);

// Random ultrametric threshold space (fixtures for the axiom harness).
FiniteProximitySpace random_ultrametric_threshold(std::mt19937_64& rng, int n);

// Fixture files: "ssprox n=<k>" then "rel <maskA> <maskB>" lines.
FiniteProximitySpace parse_ss_fixture(const std::string& text);
std::string print_ss_fixture(const FiniteProximitySpace& P);

}  // namespace coarseprox
