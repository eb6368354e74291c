// SPDX-License-Identifier: Apache-2.0
//
// irssim - CSI acquisition simulator for IRS-assisted mmWave links
// Copyright (C) 2026 The irssim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "irssim/positioner.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace irssim
{
    namespace
    {
        Eigen::Vector3d to_vec(const Point3 &p) { return {p.x, p.y, p.z}; }
        Point3 to_point(const Eigen::Vector3d &v) { return {v.x(), v.y(), v.z()}; }

        struct Problem
        {
            std::vector<Eigen::Vector3d> anchors;
            std::vector<double> ranges;

            double cost(const Eigen::Vector3d &x) const
            {
                double c = 0.0;
                for (std::size_t m = 0; m < anchors.size(); ++m)
                {
                    const double r = (x - anchors[m]).norm() - ranges[m];
                    c += r * r;
                }
                return c;
            }

            void linearize(const Eigen::Vector3d &x, Eigen::Matrix3d &jtj, Eigen::Vector3d &jtr) const
            {
                jtj.setZero();
                jtr.setZero();
                for (std::size_t m = 0; m < anchors.size(); ++m)
                {
                    const Eigen::Vector3d diff = x - anchors[m];
                    const double dist = diff.norm();
                    if (dist == 0.0)
                        continue;
                    const Eigen::Vector3d row = diff / dist;
                    jtj += row * row.transpose();
                    jtr += row * (dist - ranges[m]);
                }
            }

            double rms(const Eigen::Vector3d &x) const { return std::sqrt(cost(x) / double(anchors.size())); }
        };

        Eigen::Vector3d mirror_to_front(Eigen::Vector3d x)
        {
            x.x() = std::abs(x.x());
            return x;
        }

        // Closed-form start. Returns the ill-conditioning flag through `collinear`.
        Eigen::Vector3d initial_point(const Problem &pb, bool &collinear)
        {
            const std::size_t n = pb.anchors.size();
            Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
            for (const auto &a : pb.anchors)
                centroid += a;
            centroid /= double(n);

            Eigen::MatrixXd centered(n, 3);
            for (std::size_t m = 0; m < n; ++m)
                centered.row(Eigen::Index(m)) = (pb.anchors[m] - centroid).transpose();

            Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
            const auto &sv = svd.singularValues();
            const double tol = 1e-9 * std::max(sv(0), 1e-300);
            const int rank = int((sv.array() > tol).count());
            collinear = rank < 2;

            // |X - P_m|^2 = d_m^2, minus the mean over m, is linear in X' = X - centroid:
            // 2 (P_m - c)^T X' = |P_m - c|^2 - mean|P - c|^2 - (d_m^2 - mean d^2)
            double mean_sq = 0.0, mean_d2 = 0.0;
            for (std::size_t m = 0; m < n; ++m)
            {
                mean_sq += centered.row(Eigen::Index(m)).squaredNorm();
                mean_d2 += pb.ranges[m] * pb.ranges[m];
            }
            mean_sq /= double(n);
            mean_d2 /= double(n);

            Eigen::VectorXd rhs(n);
            for (std::size_t m = 0; m < n; ++m)
                rhs(Eigen::Index(m)) = 0.5 * (centered.row(Eigen::Index(m)).squaredNorm() - mean_sq -
                                              (pb.ranges[m] * pb.ranges[m] - mean_d2));

            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(centered);
            cod.setThreshold(1e-9);
            Eigen::Vector3d offset = cod.solve(rhs);
            Eigen::Vector3d x = centroid + offset;

            if (rank == 2)
            {
                // Anchors span a plane: place the point off-plane by the mean squared range.
                Eigen::Vector3d normal = svd.matrixV().col(2);
                if (normal.x() < 0.0 || (normal.x() == 0.0 && normal.sum() < 0.0))
                    normal = -normal;
                double s2 = 0.0, scale = 0.0;
                for (std::size_t m = 0; m < n; ++m)
                {
                    s2 += pb.ranges[m] * pb.ranges[m] - (x - pb.anchors[m]).squaredNorm();
                    scale += pb.ranges[m];
                }
                s2 /= double(n);
                scale /= double(n);
                // A point exactly on the plane is a stationary point of the cost; start just off it.
                const double s = (s2 > 0.0) ? std::sqrt(s2) : 1e-3 * std::max(scale, 1e-3);
                x += s * normal;
            }
            return mirror_to_front(x);
        }
    } // namespace

    PositionEstimate trilaterate(std::span<const RangeObservation> observations, const SolverConfig &config)
    {
        Problem pb;
        for (const auto &o : observations)
            if (o.valid)
            {
                if (!o.anchor.is_finite() || !std::isfinite(o.range) || o.range < 0.0)
                    throw std::invalid_argument("Range observation must have a finite anchor and non-negative range");
                pb.anchors.push_back(to_vec(o.anchor));
                pb.ranges.push_back(o.range);
            }
        if (pb.anchors.size() < 3)
            throw std::invalid_argument("Trilateration needs at least 3 valid range observations, got " +
                                        std::to_string(pb.anchors.size()));

        PositionEstimate est;
        bool collinear = false;
        Eigen::Vector3d x = initial_point(pb, collinear);
        est.ill_conditioned = collinear;
        if (config.initial_guess)
            x = mirror_to_front(to_vec(*config.initial_guess));
        est.initial_residual_rms = pb.rms(x);

        double lambda = config.initial_damping;
        double cost = pb.cost(x);
        Eigen::Matrix3d jtj;
        Eigen::Vector3d jtr;

        int it = 0;
        for (; it < config.max_iterations; ++it)
        {
            pb.linearize(x, jtj, jtr);
            if (jtr.norm() < config.gradient_tolerance)
            {
                est.converged = true;
                break;
            }

            Eigen::Matrix3d damped = jtj;
            for (int i = 0; i < 3; ++i)
                damped(i, i) += lambda * std::max(jtj(i, i), 1e-12);
            const Eigen::Vector3d step = damped.ldlt().solve(-jtr);
            if (!step.allFinite())
                break;

            const Eigen::Vector3d candidate = mirror_to_front(x + step);
            const double new_cost = pb.cost(candidate);
            if (new_cost <= cost)
            {
                x = candidate;
                cost = new_cost;
                lambda = std::max(lambda / 10.0, 1e-12);
                if (step.norm() < config.step_tolerance)
                {
                    est.converged = true;
                    ++it;
                    break;
                }
            }
            else
            {
                lambda *= 10.0;
                if (step.norm() < config.step_tolerance || lambda > 1e12)
                {
                    // No descent left at this resolution.
                    est.converged = step.norm() < config.step_tolerance;
                    ++it;
                    break;
                }
            }
        }

        est.point = to_point(x);
        est.residual_rms = pb.rms(x);
        est.iterations_used = it;
        return est;
    }

    double position_error(const Point3 &estimate, const Point3 &truth)
    {
        return distance(estimate, truth);
    }

} // namespace irssim
