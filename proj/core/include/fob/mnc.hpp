#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fob/bessel.hpp"
#include "fob/params.hpp"
#include "fob/quadrature.hpp"

namespace fob {
namespace mnc {

/// Parameters of the zero-dispersion per-sample conditional pdf.
struct MncPdfParams {
    double eta = 0.0;            // gamma * L composite, W^-1
    double noise_power_w = 0.0;  // P_N
    double truncation_tol = 1e-12;
    int m_max = 500;
};

MncPdfParams make_pdf_params(const DiscreteChannelParams& d, double truncation_tol = 1e-12,
                             int m_max = 500);

struct SeriesDiag {
    int m_used = 0;
    bool truncated_ok = true;  // tolerance reached before m_max
};

/// log C_m(r) for the phase-series term of the conditional pdf,
/// assembled fully in the log domain (principal square-root branch).
ComplexLog log_fourier_coeff(int m, double r, double r0, const MncPdfParams& p);
std::complex<double> fourier_coeff(int m, double r, double r0, const MncPdfParams& p);

/// All C_m up to series truncation at fixed (r, r0).
std::vector<std::complex<double>> fourier_coeffs(double r, double r0, const MncPdfParams& p,
                                                 SeriesDiag* diag = nullptr);

/// Rician conditional amplitude density (independent of the nonlinearity).
double log_amplitude_pdf(double r, double r0, const MncPdfParams& p);
double amplitude_pdf(double r, double r0, const MncPdfParams& p);

/// Joint conditional density f(r, theta | r0, theta0).
double conditional_pdf(double r, double theta, double r0, double theta0, const MncPdfParams& p,
                       SeriesDiag* diag = nullptr);

/// The three conditional statistics entering the duality bound.
struct CondEntropies {
    double e_log_r = 0.0;  // E[log r | r0], nats
    double h_r = 0.0;      // h(r | r0), nats
    double h_theta = 0.0;  // h(theta | r, r0, theta0 = 0), nats
    bool flagged = false;
};
CondEntropies cond_entropies(double r0, const MncPdfParams& p, const QuadratureSpec& spec = {});

/// Phase-conditional entropy h(theta | r = r, r0), nats. Periodic grid,
/// doubled from 512 points until stable.
double phase_entropy_at(double r, double r0, const MncPdfParams& p);

struct UpperBoundResult {
    double bits = 0.0;
    double lambda_star = 0.0;
    double a_shape_star = 0.0;  // Gamma reference shape
    double r0_star = 0.0;
    int iterations = 0;
    bool converged = true;
    bool flagged = false;
};
UpperBoundResult upper_bound(double p_w, const MncPdfParams& p, const QuadratureSpec& spec = {});

/// Scaled chi input with k degrees of freedom, E[r0^2] = power_w.
struct ChiInputLaw {
    double k = 2.0;
    double power_w = 0.0;
};
double chi_log_pdf(double r0, const ChiInputLaw& law);

struct ChiBound {
    double total_bits = 0.0;
    double amplitude_bits = 0.0;
    double phase_bits = 0.0;
    bool flagged = false;
};
ChiBound chi_lower_bound(double p_w, double k, const MncPdfParams& p,
                         const QuadratureSpec& spec = {});

struct MaxChiResult {
    double bits = 0.0;
    double k_star = 0.0;
    ChiBound best;
};
MaxChiResult max_chi_lower_bound(double p_w, const MncPdfParams& p,
                                 const QuadratureSpec& spec = {});

/// Distributed-amplification split-step oracle: per segment a nonlinear
/// rotation followed by a noise increment of variance P_N/segments.
std::vector<std::complex<double>> simulate_ssf(const std::vector<std::complex<double>>& x,
                                               int segments, const DiscreteChannelParams& params,
                                               std::uint64_t seed);

}  // namespace mnc
}  // namespace fob
