#include "idxcap/theta.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "idxcap/invariants.hpp"

namespace idxcap {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Largest step alpha in [0, 1] keeping M + alpha * D positive definite,
// shrunk slightly away from the boundary.
double max_step(const Mat& m, const Mat& d) {
    Eigen::LLT<Mat> llt(m);
    if (llt.info() != Eigen::Success) return 0.0;
    Mat l = llt.matrixL();
    Mat w = l.triangularView<Eigen::Lower>().solve(d);
    Mat s = l.triangularView<Eigen::Lower>().solve(w.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin >= -1e-14) return 1.0;
    return std::min(1.0, -0.98 / lmin);
}

}  // namespace

ThetaResult lovasz_theta(const UndirectedGraph& u, double tol) {
    int n = u.n();
    if (n > 128) throw std::invalid_argument("lovasz_theta: vertex cap exceeded");
    if (tol < 1e-9 || tol > 1e-2) throw std::invalid_argument("lovasz_theta: tol out of range");
    ThetaResult res;
    if (n == 0) {
        res.converged = true;
        return res;
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (u.has_edge(i, j)) edges.emplace_back(i, j);
    int m = 1 + static_cast<int>(edges.size());  // trace constraint + edges

    Mat J = Mat::Ones(n, n);
    Mat X = Mat::Identity(n, n) / n;
    double t = n + 1.0;
    Vec y = Vec::Zero(m);  // y(0) = t, y(1 + e) = edge multipliers
    y(0) = t;
    Mat Z = t * Mat::Identity(n, n) - J;  // psd: eigenvalues t - n and t

    const int max_iter = 200;
    for (int it = 0; it < max_iter; ++it) {
        double gap = (X.cwiseProduct(Z)).sum();
        res.value = y(0);
        res.tol = gap;
        res.iterations = it;
        if (gap < tol) {
            res.converged = true;
            return res;
        }
        double mu = gap / n;
        double sigma = (gap < 1e-3) ? 0.1 : 0.3;

        Eigen::LLT<Mat> lltz(Z);
        if (lltz.info() != Eigen::Success) break;
        Mat Zi = lltz.solve(Mat::Identity(n, n));
        Mat ZiX = Zi * X;

        // Schur complement M_kl = tr(A_k Z^{-1} A_l X); edge rows/cols close
        // in O(1) from Zi and X entries
        Mat M(m, m);
        Vec r(m);
        M(0, 0) = ZiX.trace();
        r(0) = sigma * mu * Zi.trace() - 1.0;
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
            auto [i, j] = edges[e];
            M(0, e + 1) = ZiX(j, i) + ZiX(i, j);
            M(e + 1, 0) = M(0, e + 1);
            r(e + 1) = sigma * mu * (Zi(i, j) + Zi(j, i));
            for (int f = 0; f < static_cast<int>(edges.size()); ++f) {
                auto [k, l] = edges[f];
                M(e + 1, f + 1) = Zi(j, k) * X(l, i) + Zi(j, l) * X(k, i) + Zi(i, k) * X(l, j) + Zi(i, l) * X(k, j);
            }
        }
        Vec dy = M.partialPivLu().solve(r);

        Mat dZ = dy(0) * Mat::Identity(n, n);
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
            auto [i, j] = edges[e];
            dZ(i, j) += dy(e + 1);
            dZ(j, i) += dy(e + 1);
        }
        Mat dXr = sigma * mu * Zi - X - Zi * dZ * X;
        Mat dX = 0.5 * (dXr + dXr.transpose());
        // keep primal feasibility exactly: the symmetrization preserves the
        // edge and trace constraints only approximately, so project back
        dX -= (dX.trace() / n) * Mat::Identity(n, n);
        for (auto [i, j] : edges) {
            dX(i, j) = -X(i, j);
            dX(j, i) = -X(j, i);
        }

        double ap = max_step(X, dX);
        double ad = max_step(Z, dZ);
        if (ap < 1e-12 && ad < 1e-12) break;
        X += ap * dX;
        y += ad * dy;
        Z += ad * dZ;
    }
    res.tol = (X.cwiseProduct(Z)).sum();
    res.value = y(0);
    return res;
}

std::pair<double, double> shannon_capacity_bracket(const UndirectedGraph& u, int kmax, Budget* budget) {
    double lower = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        double size = std::pow(static_cast<double>(u.n()), k);
        if (size > UndirectedGraph::kMaxVertices) throw std::invalid_argument("shannon_capacity_bracket: power too large");
        UndirectedGraph p = strong_power(u, k);
        BoundedInt a = alpha(p, budget);
        lower = std::max(lower, std::pow(static_cast<double>(a.lower), 1.0 / k));
    }
    double upper = lovasz_theta(u).value;
    return {lower, upper};
}

}  // namespace idxcap
