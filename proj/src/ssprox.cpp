#include "coarseprox/ssprox.hpp"

#include <sstream>
#include <stdexcept>

namespace coarseprox {

FiniteProximitySpace::FiniteProximitySpace(int ground_size) : n_(ground_size) {
    if (n_ < 1 || n_ > 8) throw std::invalid_argument("ground size must be 1..8");
    rel_.assign(size_t{1} << (2 * n_), false);
}

void FiniteProximitySpace::relate(mask_t a, mask_t b) {
    if (a >= (mask_t{1} << n_) || b >= (mask_t{1} << n_))
        throw std::invalid_argument("subset mask out of range");
    if (a == 0 || b == 0) throw std::invalid_argument("the empty set is near nothing");
    rel_[idx(a, b)] = true;
    rel_[idx(b, a)] = true;
}

bool FiniteProximitySpace::related(mask_t a, mask_t b) const {
    if (a == 0 || b == 0) return false;
    return rel_[idx(a, b)];
}

FiniteProximitySpace FiniteProximitySpace::discrete(int n) {
    FiniteProximitySpace P(n);
    const mask_t full = (mask_t{1} << n) - 1;
    for (mask_t a = 1; a <= full; ++a)
        for (mask_t b = a; b <= full; ++b)
            if (a & b) P.relate(a, b);
    return P;
}

FiniteProximitySpace FiniteProximitySpace::metric_threshold(
    const std::vector<std::vector<int>>& dist, int threshold) {
    const int n = static_cast<int>(dist.size());
    FiniteProximitySpace P(n);
    const mask_t full = (mask_t{1} << n) - 1;
    for (mask_t a = 1; a <= full; ++a) {
        for (mask_t b = a; b <= full; ++b) {
            bool near = false;
            for (int i = 0; i < n && !near; ++i) {
                if (!(a & (mask_t{1} << i))) continue;
                for (int j = 0; j < n; ++j) {
                    if (!(b & (mask_t{1} << j))) continue;
                    if (dist[i][j] <= threshold) {
                        near = true;
                        break;
                    }
                }
            }
            if (near) P.relate(a, b);
        }
    }
    return P;
}

SsAxiomReport check_ss_axioms(const FiniteProximitySpace& P) {
    SsAxiomReport rep;
    const int n = P.ground_size();
    const mask_t full = (mask_t{1} << n) - 1;

    rep.symmetry = true;
    for (mask_t a = 0; a <= full && rep.symmetry; ++a)
        for (mask_t b = 0; b <= full; ++b)
            if (P.related(a, b) != P.related(b, a)) {
                rep.symmetry = false;
                rep.counterexample = "symmetry " + std::to_string(a) + "," + std::to_string(b);
                break;
            }

    rep.nonempty = true;
    for (mask_t b = 0; b <= full; ++b)
        if (P.related(0, b) || P.related(b, 0)) {
            rep.nonempty = false;
            rep.counterexample = "empty set related to " + std::to_string(b);
            break;
        }

    rep.union_axiom = true;
    for (mask_t a = 0; a <= full && rep.union_axiom; ++a)
        for (mask_t b = 0; b <= full && rep.union_axiom; ++b)
            for (mask_t c = 0; c <= full; ++c) {
                const bool lhs = P.related(a | b, c);
                const bool rhs = P.related(a, c) || P.related(b, c);
                if (lhs != rhs) {
                    rep.union_axiom = false;
                    rep.counterexample = "union " + std::to_string(a) + "," + std::to_string(b) +
                                         "," + std::to_string(c);
                    break;
                }
            }

    rep.intersection = true;
    for (mask_t a = 1; a <= full && rep.intersection; ++a)
        for (mask_t b = 1; b <= full; ++b)
            if ((a & b) && !P.related(a, b)) {
                rep.intersection = false;
                rep.counterexample =
                    "intersection " + std::to_string(a) + "," + std::to_string(b);
                break;
            }

    rep.strong = true;
    for (mask_t a = 1; a <= full && rep.strong; ++a) {
        for (mask_t b = 1; b <= full; ++b) {
            if (P.related(a, b)) continue;
            bool found = false;
            for (mask_t e = 0; e <= full && !found; ++e) {
                if (!P.related(a, e) && !P.related(full & ~e, b)) found = true;
            }
            if (!found) {
                rep.strong = false;
                rep.counterexample = "strong " + std::to_string(a) + "," + std::to_string(b);
                break;
            }
        }
    }
    return rep;
}

mask_t closure(const FiniteProximitySpace& P, mask_t A) {
    mask_t out = 0;
    for (int i = 0; i < P.ground_size(); ++i) {
        if (P.related(mask_t{1} << i, A)) out |= (mask_t{1} << i);
    }
    return out;
}

mask_t image_mask(const std::vector<int>& f, mask_t a, int domain_size) {
    mask_t out = 0;
    for (int i = 0; i < domain_size; ++i)
        if (a & (mask_t{1} << i)) out |= (mask_t{1} << f[i]);
    return out;
}

mask_t preimage_mask(const std::vector<int>& f, mask_t c, int domain_size) {
    mask_t out = 0;
    for (int i = 0; i < domain_size; ++i)
        if (c & (mask_t{1} << f[i])) out |= (mask_t{1} << i);
    return out;
}

ProxMapCheck check_prox_map(const std::vector<int>& f, const FiniteProximitySpace& P,
                            const FiniteProximitySpace& Q) {
    ProxMapCheck out;
    const mask_t full = (mask_t{1} << P.ground_size()) - 1;
    for (mask_t a = 1; a <= full; ++a) {
        for (mask_t b = 1; b <= full; ++b) {
            if (!P.related(a, b)) continue;
            if (!Q.related(image_mask(f, a, P.ground_size()),
                           image_mask(f, b, P.ground_size()))) {
                out.ok = false;
                out.a = a;
                out.b = b;
                return out;
            }
        }
    }
    return out;
}

FiniteProximitySpace induced_domain_prox(const std::vector<int>& f,
                                         const FiniteProximitySpace& Q, int domain_size) {
    FiniteProximitySpace P(domain_size);
    const mask_t fullX = (mask_t{1} << domain_size) - 1;
    const mask_t fullY = (mask_t{1} << Q.ground_size()) - 1;
    for (mask_t a = 1; a <= fullX; ++a) {
        for (mask_t b = a; b <= fullX; ++b) {
            // not related iff a separating codomain subset exists
            bool separated = false;
            const mask_t img = image_mask(f, a, domain_size);
            for (mask_t c = 0; c <= fullY && !separated; ++c) {
                if (Q.related(img, fullY & ~c)) continue;
                if ((preimage_mask(f, c, domain_size) & b) != 0) continue;
                separated = true;
            }
            if (!separated) P.relate(a, b);
        }
    }
    return P;
}

FiniteProximitySpace pullback_prox(const std::vector<int>& f, const FiniteProximitySpace& Q,
                                   int domain_size) {
    FiniteProximitySpace P(domain_size);
    const mask_t fullX = (mask_t{1} << domain_size) - 1;
    for (mask_t a = 1; a <= fullX; ++a)
        for (mask_t b = a; b <= fullX; ++b)
            if (Q.related(image_mask(f, a, domain_size), image_mask(f, b, domain_size)))
                P.relate(a, b);
    return P;
}

bool finer_than(const FiniteProximitySpace& P, const FiniteProximitySpace& Q) {
    const mask_t full = (mask_t{1} << P.ground_size()) - 1;
    for (mask_t a = 0; a <= full; ++a)
        for (mask_t b = 0; b <= full; ++b)
            if (P.related(a, b) && !Q.related(a, b)) return false;
    return true;
}

FiniteProximitySpace random_ultrametric_threshold(std::mt19937_64& rng, int n) {
    // leaves of a depth-3 binary tree; distance = 1 << (levels to the least
    // common ancestor), an ultrametric
    std::vector<int> leaf(n);
    std::uniform_int_distribution<int> pick(0, 7);
    for (int i = 0; i < n; ++i) leaf[i] = pick(rng);
    std::vector<std::vector<int>> d(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (leaf[i] == leaf[j]) {
                d[i][j] = 0;
                continue;
            }
            int x = leaf[i] ^ leaf[j];
            int level = 0;
            while (x) {
                ++level;
                x >>= 1;
            }
            d[i][j] = 1 << level;
        }
    }
    std::uniform_int_distribution<int> th(0, 4);
    return FiniteProximitySpace::metric_threshold(d, 1 << th(rng));
}

FiniteProximitySpace parse_ss_fixture(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    std::vector<std::pair<mask_t, mask_t>> rels;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "ssprox") {
            std::string arg;
            ls >> arg;
            if (arg.rfind("n=", 0) != 0) throw std::invalid_argument("expected n=<size>");
            n = std::stoi(arg.substr(2));
        } else if (kw == "rel") {
            unsigned long a, b;
            if (!(ls >> a >> b)) throw std::invalid_argument("rel needs two masks");
            rels.push_back({static_cast<mask_t>(a), static_cast<mask_t>(b)});
        } else {
            throw std::invalid_argument("unknown fixture line: " + kw);
        }
    }
    if (n < 1) throw std::invalid_argument("fixture missing ssprox n=");
    FiniteProximitySpace P(n);
    for (auto [a, b] : rels) P.relate(a, b);
    return P;
}

std::string print_ss_fixture(const FiniteProximitySpace& P) {
    std::ostringstream os;
    os << "ssprox n=" << P.ground_size() << "\n";
    const mask_t full = (mask_t{1} << P.ground_size()) - 1;
    for (mask_t a = 1; a <= full; ++a)
        for (mask_t b = a; b <= full; ++b)
            if (P.related(a, b)) os << "rel " << a << " " << b << "\n";
    return os.str();
}

}  // namespace coarseprox
