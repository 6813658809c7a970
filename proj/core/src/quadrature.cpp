#include "vidarcy/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace vidarcy {

void gauss_legendre_unit(int n, std::vector<double>& points, std::vector<double>& weights) {
    // Nodes/weights on [-1,1], remapped to [0,1].
    static const std::map<int, std::pair<std::vector<double>, std::vector<double>>> table = {
        {1, {{0.0}, {2.0}}},
        {2, {{-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0}}},
        {3, {{-0.7745966692414834, 0.0, 0.7745966692414834},
             {0.5555555555555556, 0.8888888888888888, 0.5555555555555556}}},
        {4, {{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526},
             {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538}}},
        {5,
         {{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640},
          {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
           0.2369268850561891}}},
        {6,
         {{-0.9324695142031521, -0.6612093864662645, -0.2386191860831969, 0.2386191860831969,
           0.6612093864662645, 0.9324695142031521},
          {0.1713244923791704, 0.3607615730481386, 0.4679139345726910, 0.4679139345726910,
           0.3607615730481386, 0.1713244923791704}}}};
    auto it = table.find(n);
    if (it == table.end()) throw std::invalid_argument("gauss_legendre_unit: n out of range");
    points.clear();
    weights.clear();
    for (size_t i = 0; i < it->second.first.size(); ++i) {
        points.push_back(0.5 * (it->second.first[i] + 1.0));
        weights.push_back(0.5 * it->second.second[i]);
    }
}

namespace {

QuadratureRule make_triangle_rule(int degree) {
    QuadratureRule r;
    r.dim = 2;
    auto add = [&](double l0, double l1, double l2, double w) {
        r.points.push_back({l0, l1, l2, 0.0});
        r.weights.push_back(w * 0.5);  // weights tabulated relative to unit total
    };
    if (degree <= 1) {
        r.degree = 1;
        add(1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0);
    } else if (degree == 2) {
        r.degree = 2;
        for (int i = 0; i < 3; ++i) {
            double l[3] = {1.0 / 6, 1.0 / 6, 1.0 / 6};
            l[i] = 2.0 / 3;
            add(l[0], l[1], l[2], 1.0 / 3);
        }
    } else if (degree <= 4) {
        r.degree = 4;
        const double a1 = 0.108103018168070, b1 = 0.445948490915965, w1 = 0.223381589678011;
        const double a2 = 0.816847572980459, b2 = 0.091576213509771, w2 = 0.109951743655322;
        for (int i = 0; i < 3; ++i) {
            double l[3] = {b1, b1, b1};
            l[i] = a1;
            add(l[0], l[1], l[2], w1);
        }
        for (int i = 0; i < 3; ++i) {
            double l[3] = {b2, b2, b2};
            l[i] = a2;
            add(l[0], l[1], l[2], w2);
        }
    } else if (degree == 5) {
        r.degree = 5;
        add(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225);
        const double a1 = 0.059715871789770, b1 = 0.470142064105115, w1 = 0.132394152788506;
        const double a2 = 0.797426985353087, b2 = 0.101286507323456, w2 = 0.125939180544827;
        for (int i = 0; i < 3; ++i) {
            double l[3] = {b1, b1, b1};
            l[i] = a1;
            add(l[0], l[1], l[2], w1);
        }
        for (int i = 0; i < 3; ++i) {
            double l[3] = {b2, b2, b2};
            l[i] = a2;
            add(l[0], l[1], l[2], w2);
        }
    } else {
        // Conical product (Duffy) rule: positive weights at any degree.
        const int n = (degree + 3) / 2 + 1;
        std::vector<double> gp, gw;
        gauss_legendre_unit(std::min(n, 6), gp, gw);
        r.degree = degree;
        for (size_t i = 0; i < gp.size(); ++i) {
            for (size_t j = 0; j < gp.size(); ++j) {
                const double x = gp[i];
                const double y = gp[j] * (1.0 - gp[i]);
                const double w = gw[i] * gw[j] * (1.0 - gp[i]);
                r.points.push_back({1.0 - x - y, x, y, 0.0});
                r.weights.push_back(w);
            }
        }
    }
    return r;
}

QuadratureRule make_tet_rule(int degree) {
    QuadratureRule r;
    r.dim = 3;
    if (degree <= 1) {
        r.degree = 1;
        r.points.push_back({0.25, 0.25, 0.25, 0.25});
        r.weights.push_back(1.0 / 6.0);
    } else if (degree == 2) {
        r.degree = 2;
        const double a = 0.5854101966249685, b = 0.1381966011250105;
        for (int i = 0; i < 4; ++i) {
            std::array<double, 4> l{b, b, b, b};
            l[i] = a;
            r.points.push_back(l);
            r.weights.push_back(0.25 / 6.0);
        }
    } else {
        // Conical product rule, positive weights.
        const int n = std::min((degree + 4) / 2, 6);
        std::vector<double> gp, gw;
        gauss_legendre_unit(n, gp, gw);
        r.degree = 2 * n - 3;  // limited by the (1-x)^2 Jacobian factor
        if (r.degree < degree)
            throw std::invalid_argument("tetrahedron quadrature degree not supported");
        for (size_t i = 0; i < gp.size(); ++i) {
            for (size_t j = 0; j < gp.size(); ++j) {
                for (size_t k = 0; k < gp.size(); ++k) {
                    const double x = gp[i];
                    const double y = gp[j] * (1.0 - x);
                    const double z = gp[k] * (1.0 - x) * (1.0 - gp[j]);
                    const double w =
                        gw[i] * gw[j] * gw[k] * (1.0 - x) * (1.0 - x) * (1.0 - gp[j]);
                    r.points.push_back({1.0 - x - y - z, x, y, z});
                    r.weights.push_back(w);
                }
            }
        }
    }
    return r;
}

}  // namespace

const QuadratureRule& simplex_quadrature(int dim, int degree) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("quadrature: dim must be 2 or 3");
    if (degree < 0 || degree > 9) throw std::invalid_argument("quadrature: degree out of range");
    static std::map<std::pair<int, int>, QuadratureRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(dim, degree);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, dim == 2 ? make_triangle_rule(degree) : make_tet_rule(degree)).first;
    return it->second;
}

const FacetQuadrature& facet_quadrature(int mesh_dim, int degree) {
    if (mesh_dim != 2 && mesh_dim != 3) throw std::invalid_argument("facet quadrature: bad dim");
    static std::map<std::pair<int, int>, FacetQuadrature> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(mesh_dim, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    FacetQuadrature fq;
    if (mesh_dim == 2) {
        std::vector<double> gp, gw;
        gauss_legendre_unit(std::min((degree + 2) / 2 + 1, 6), gp, gw);
        for (size_t i = 0; i < gp.size(); ++i) {
            fq.points.push_back({1.0 - gp[i], gp[i], 0.0});
            fq.weights.push_back(gw[i]);
        }
    } else {
        const QuadratureRule& tri = simplex_quadrature(2, degree);
        for (int q = 0; q < tri.size(); ++q) {
            fq.points.push_back({tri.points[q][0], tri.points[q][1], tri.points[q][2]});
            fq.weights.push_back(tri.weights[q] * 2.0);  // renormalize to unit total
        }
    }
    return cache.emplace(key, std::move(fq)).first->second;
}

}  // namespace vidarcy
