#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <functional>
#include <type_traits>
#include <vector>

#include "pushrec/errors.hpp"
#include "pushrec/types.hpp"

namespace pushrec {

// Planar serial chain pinned at the base joint (the stance ankle).
// Joint angles are relative between consecutive links and measured from
// upright vertical; positive leans the chain forward. Gravity acts along -y.

template <typename Scalar = double>
struct LinkParams {
    Scalar mass = 0;        // kg
    Scalar length = 0;      // m, proximal joint to distal joint
    Scalar com_offset = 0;  // m from the proximal joint along the link
    Scalar inertia = 0;     // kg m^2 about the link CoM (0 = point mass)
};

template <typename Scalar = double>
struct LinkChain {
    std::vector<LinkParams<Scalar>> links;
    Scalar gravity = Scalar(9.8);  // m/s^2

    int dof() const { return static_cast<int>(links.size()); }

    void validate() const {
        if (links.empty()) throw DataError("chain: need at least one link");
        if (!(gravity > 0)) throw DataError("chain: gravity must be positive");
        for (size_t i = 0; i < links.size(); ++i) {
            const auto& l = links[i];
            const std::string tag = "link " + std::to_string(i + 1);
            if (!(l.mass > 0)) throw DataError(tag + ": mass must be positive");
            if (!(l.length > 0)) throw DataError(tag + ": length must be positive");
            if (l.com_offset < 0 || l.com_offset > l.length)
                throw DataError(tag + ": com_offset must lie within [0, length]");
            if (l.inertia < 0) throw DataError(tag + ": inertia must be non-negative");
        }
    }
};

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VecRef = Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>;
// Non-deduced argument type: Scalar comes from the chain, and any dense
// vector or expression converts to the Ref at the call site.
template <typename Scalar>
using VecArg = std::type_identity_t<Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>>;

template <typename Scalar = double>
struct JointState {
    VectorX<Scalar> theta;       // rad
    VectorX<Scalar> theta_dot;   // rad/s
    VectorX<Scalar> theta_ddot;  // rad/s^2; may be empty when unused
};

namespace detail {

/// Per-configuration kinematic quantities shared by M, C, G.
template <typename Scalar>
struct ChainKinematics {
    using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
    VectorX<Scalar> phi;          // absolute link angles from vertical
    std::vector<Vec2> u;          // link direction (sin phi, cos phi)
    std::vector<Vec2> du;         // d(u)/d(phi) = (cos phi, -sin phi)
    std::vector<Vec2> joint_pos;  // proximal joint of each link; base at origin
    std::vector<Vec2> com;        // link CoM positions

    ChainKinematics(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta) {
        const int n = chain.dof();
        phi.resize(n);
        u.resize(n);
        du.resize(n);
        joint_pos.resize(n);
        com.resize(n);
        Scalar acc = 0;
        Vec2 p = Vec2::Zero();
        for (int k = 0; k < n; ++k) {
            acc += theta[k];
            phi[k] = acc;
            u[k] = {std::sin(acc), std::cos(acc)};
            du[k] = {std::cos(acc), -std::sin(acc)};
            joint_pos[k] = p;
            com[k] = p + chain.links[k].com_offset * u[k];
            p += chain.links[k].length * u[k];
        }
    }

    /// d(com_k)/d(theta_i); zero for i > k.
    Vec2 com_partial(const LinkChain<Scalar>& chain, int k, int i) const {
        if (i > k) return Vec2::Zero();
        Vec2 a = chain.links[k].com_offset * du[k];
        for (int j = i; j < k; ++j) a += chain.links[j].length * du[j];
        return a;
    }

    /// d^2(com_k)/d(theta_i)d(theta_m); zero unless i <= k and m <= k.
    Vec2 com_second_partial(const LinkChain<Scalar>& chain, int k, int i, int m) const {
        if (i > k || m > k) return Vec2::Zero();
        Vec2 b = -chain.links[k].com_offset * u[k];
        for (int j = std::max(i, m); j < k; ++j) b -= chain.links[j].length * u[j];
        return b;
    }
};

}  // namespace detail

template <typename Scalar>
void check_state_size(const LinkChain<Scalar>& chain, const VecArg<Scalar>& v,
                      const char* what) {
    if (v.size() != chain.dof())
        throw DataError(std::string(what) + " length " + std::to_string(v.size()) +
                        " does not match chain dof " + std::to_string(chain.dof()));
}

/// Generalized inertia in joint coordinates; symmetric positive definite.
template <typename Scalar>
MatrixX<Scalar> mass_matrix(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta) {
    check_state_size(chain, theta, "theta");
    const int n = chain.dof();
    const detail::ChainKinematics<Scalar> kin(chain, theta);

    MatrixX<Scalar> m = MatrixX<Scalar>::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        std::vector<typename detail::ChainKinematics<Scalar>::Vec2> a(k + 1);
        for (int i = 0; i <= k; ++i) a[i] = kin.com_partial(chain, k, i);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= i; ++j)
                m(i, j) += chain.links[k].mass * a[i].dot(a[j]) + chain.links[k].inertia;
    }
    m.template triangularView<Eigen::StrictlyUpper>() =
        m.template triangularView<Eigen::StrictlyLower>().transpose();
    return m;
}

/// dM/d(theta_m) for every m; used for the Christoffel form of C.
template <typename Scalar>
std::vector<MatrixX<Scalar>> mass_matrix_partials(const LinkChain<Scalar>& chain,
                                                  const VecArg<Scalar>& theta) {
    check_state_size(chain, theta, "theta");
    const int n = chain.dof();
    const detail::ChainKinematics<Scalar> kin(chain, theta);

    std::vector<MatrixX<Scalar>> dm(n, MatrixX<Scalar>::Zero(n, n));
    for (int k = 0; k < n; ++k) {
        std::vector<typename detail::ChainKinematics<Scalar>::Vec2> a(k + 1);
        for (int i = 0; i <= k; ++i) a[i] = kin.com_partial(chain, k, i);
        for (int m = 0; m <= k; ++m) {
            std::vector<typename detail::ChainKinematics<Scalar>::Vec2> b(k + 1);
            for (int i = 0; i <= k; ++i) b[i] = kin.com_second_partial(chain, k, i, m);
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= k; ++j)
                    dm[m](i, j) += chain.links[k].mass * (b[i].dot(a[j]) + a[i].dot(b[j]));
        }
    }
    return dm;
}

/// Coriolis matrix via Christoffel symbols of the mass matrix, so that
/// dM/dt - 2*C_mat is exactly skew-symmetric and C_mat * theta_dot = C.
template <typename Scalar>
MatrixX<Scalar> coriolis_matrix(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta,
                                const VecArg<Scalar>& theta_dot) {
    check_state_size(chain, theta, "theta");
    check_state_size(chain, theta_dot, "theta_dot");
    const int n = chain.dof();
    const auto dm = mass_matrix_partials<Scalar>(chain, theta);

    MatrixX<Scalar> c = MatrixX<Scalar>::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                c(i, j) += Scalar(0.5) * (dm[k](i, j) + dm[j](i, k) - dm[i](j, k)) *
                           theta_dot[k];
    return c;
}

template <typename Scalar>
VectorX<Scalar> coriolis_vector(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta,
                                const VecArg<Scalar>& theta_dot) {
    return coriolis_matrix<Scalar>(chain, theta, theta_dot) * theta_dot;
}

/// Gradient of total potential energy w.r.t. theta, as it appears in
/// M*theta_ddot + C + G = tau. Zero in the upright configuration.
template <typename Scalar>
VectorX<Scalar> gravity_vector(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta) {
    check_state_size(chain, theta, "theta");
    const int n = chain.dof();
    const detail::ChainKinematics<Scalar> kin(chain, theta);
    VectorX<Scalar> g = VectorX<Scalar>::Zero(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i <= k; ++i)
            g[i] += chain.links[k].mass * chain.gravity * kin.com_partial(chain, k, i)[1];
    return g;
}

template <typename Scalar>
Scalar potential_energy(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta) {
    check_state_size(chain, theta, "theta");
    const detail::ChainKinematics<Scalar> kin(chain, theta);
    Scalar v = 0;
    for (int k = 0; k < chain.dof(); ++k)
        v += chain.links[k].mass * chain.gravity * kin.com[k][1];
    return v;
}

template <typename Scalar>
Scalar kinetic_energy(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta,
                      const VecArg<Scalar>& theta_dot) {
    return Scalar(0.5) * theta_dot.dot(mass_matrix<Scalar>(chain, theta) * theta_dot);
}

template <typename Scalar>
Scalar total_energy(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta,
                    const VecArg<Scalar>& theta_dot) {
    return kinetic_energy<Scalar>(chain, theta, theta_dot) +
           potential_energy<Scalar>(chain, theta);
}

/// tau = M(theta) theta_ddot + C(theta, theta_dot) + G(theta); friction neglected.
template <typename Scalar>
VectorX<Scalar> inverse_dynamics(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta,
                                 const VecArg<Scalar>& theta_dot,
                                 const VecArg<Scalar>& theta_ddot) {
    check_state_size(chain, theta_ddot, "theta_ddot");
    return mass_matrix<Scalar>(chain, theta) * theta_ddot +
           coriolis_vector<Scalar>(chain, theta, theta_dot) +
           gravity_vector<Scalar>(chain, theta);
}

/// theta_ddot = M^-1 (tau - C - G) via an LLT factorization of M.
template <typename Scalar>
VectorX<Scalar> forward_dynamics(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta,
                                 const VecArg<Scalar>& theta_dot, const VecArg<Scalar>& tau) {
    check_state_size(chain, tau, "tau");
    const MatrixX<Scalar> m = mass_matrix<Scalar>(chain, theta);
    Eigen::LLT<MatrixX<Scalar>> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericError("forward_dynamics: mass matrix is not positive definite");
    const VectorX<Scalar> rhs = tau - coriolis_vector<Scalar>(chain, theta, theta_dot) -
                                gravity_vector<Scalar>(chain, theta);
    return llt.solve(rhs);
}

template <typename Scalar = double>
struct JointTrajectory {
    VectorX<Scalar> t;
    MatrixX<Scalar> theta;      // one row per step
    MatrixX<Scalar> theta_dot;
    MatrixX<Scalar> tau;        // torque applied at the start of each step
};

template <typename Scalar>
using TorqueFunction =
    std::function<VectorX<Scalar>(Scalar t, const VectorX<Scalar>& theta,
                                  const VectorX<Scalar>& theta_dot)>;

/// Classical fixed-step RK4 on (theta, theta_dot). Deterministic for a
/// deterministic torque function. Aborts on a non-finite state.
template <typename Scalar>
JointTrajectory<Scalar> integrate(const LinkChain<Scalar>& chain,
                                  const JointState<Scalar>& initial,
                                  const TorqueFunction<Scalar>& torque, Scalar dt,
                                  Scalar t_end) {
    if (!(dt > 0)) throw DataError("integrate: dt must be positive");
    if (t_end < 0) throw DataError("integrate: t_end must be non-negative");
    check_state_size(chain, initial.theta, "theta");
    check_state_size(chain, initial.theta_dot, "theta_dot");

    const int n = chain.dof();
    const auto steps = static_cast<Eigen::Index>(std::llround(t_end / dt));

    JointTrajectory<Scalar> out;
    out.t.resize(steps + 1);
    out.theta.resize(steps + 1, n);
    out.theta_dot.resize(steps + 1, n);
    out.tau.resize(steps + 1, n);

    VectorX<Scalar> th = initial.theta, om = initial.theta_dot;
    const auto accel = [&](Scalar t, const VectorX<Scalar>& q, const VectorX<Scalar>& qd) {
        return forward_dynamics<Scalar>(chain, q, qd, torque(t, q, qd));
    };

    for (Eigen::Index s = 0;; ++s) {
        const Scalar t = static_cast<Scalar>(s) * dt;
        if (!th.allFinite() || !om.allFinite())
            throw NumericError("integrate: non-finite state at t = " +
                               std::to_string(static_cast<double>(t)));
        out.t[s] = t;
        out.theta.row(s) = th.transpose();
        out.theta_dot.row(s) = om.transpose();
        out.tau.row(s) = torque(t, th, om).transpose();
        if (s == steps) break;

        const VectorX<Scalar> k1q = om, k1v = accel(t, th, om);
        const VectorX<Scalar> q2 = th + dt / 2 * k1q, v2 = om + dt / 2 * k1v;
        const VectorX<Scalar> k2q = v2, k2v = accel(t + dt / 2, q2, v2);
        const VectorX<Scalar> q3 = th + dt / 2 * k2q, v3 = om + dt / 2 * k2v;
        const VectorX<Scalar> k3q = v3, k3v = accel(t + dt / 2, q3, v3);
        const VectorX<Scalar> q4 = th + dt * k3q, v4 = om + dt * k3v;
        const VectorX<Scalar> k4q = v4, k4v = accel(t + dt, q4, v4);

        th += dt / 6 * (k1q + 2 * k2q + 2 * k3q + k4q);
        om += dt / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    return out;
}

/// Feedforward inverse dynamics on the reference plus joint-space PD.
template <typename Scalar>
VectorX<Scalar> recovery_torque(const LinkChain<Scalar>& chain, const VecArg<Scalar>& theta,
                                const VecArg<Scalar>& theta_dot,
                                const JointState<Scalar>& reference,
                                const VecArg<Scalar>& kp, const VecArg<Scalar>& kd) {
    check_state_size(chain, kp, "kp");
    check_state_size(chain, kd, "kd");
    if (kp.minCoeff() < 0 || kd.minCoeff() < 0)
        throw DataError("recovery_torque: gains must be non-negative");
    VectorX<Scalar> ddot = reference.theta_ddot;
    if (ddot.size() == 0) ddot = VectorX<Scalar>::Zero(chain.dof());
    const VectorX<Scalar> ff =
        inverse_dynamics<Scalar>(chain, reference.theta, reference.theta_dot, ddot);
    return ff + kp.cwiseProduct(reference.theta - theta) +
           kd.cwiseProduct(reference.theta_dot - theta_dot);
}

/// Anthropomorphic sagittal 3-link chain (shank, thigh, head-arms-trunk)
/// from standard body-segment fractions; both legs act as one link.
///   segment      mass/body  length/height  com/len(proximal)  gyration/len
///   shank (x2)     0.0465       0.246            0.567            0.302
///   thigh (x2)     0.1000       0.245            0.567            0.323
///   HAT            0.6780       0.288            0.626            0.496
LinkChain<double> default_chain(const SubjectMeta& meta, double gravity = 9.8);

}  // namespace pushrec
