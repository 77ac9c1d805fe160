#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "harper/sl2.hpp"

namespace harper {

/// In-place radix-2 FFT (inverse = true divides by the length). Size must be a power of two.
void fft(std::vector<std::complex<double>>& data, bool inverse);

/// Truncated Fourier series sum_{|m| <= M} c_m e^{i m theta}. Real-valued maps keep the
/// conjugate symmetry c_{-m} = conj(c_m); enforce_real() projects onto that subspace.
class FourierSeries {
public:
    FourierSeries() : M_(0), c_(1, 0.0) {}
    explicit FourierSeries(int M) : M_(M), c_(2 * static_cast<size_t>(M) + 1, 0.0) {}

    int degree() const { return M_; }

    std::complex<double> coeff(int m) const {
        return (m < -M_ || m > M_) ? std::complex<double>(0.0) : c_[static_cast<size_t>(m + M_)];
    }
    void set_coeff(int m, std::complex<double> v) { c_[static_cast<size_t>(m + M_)] = v; }

    /// Mean value [f] (the m = 0 coefficient).
    std::complex<double> mean() const { return coeff(0); }

    std::complex<double> eval(double theta) const;
    /// Evaluation assuming the series represents a real map.
    double eval_real(double theta) const;

    /// Values on the uniform grid theta_j = 2 pi j / G, via FFT. G must be a power of two
    /// with G/2 > degree.
    std::vector<double> sample(int G) const;

    /// Interpolating series from samples on the uniform grid (size a power of two);
    /// keeps modes |m| <= G/2 - 1.
    static FourierSeries from_real_samples(const std::vector<double>& vals);

    /// Largest |c_m| with |m| >= m0.
    double tail(int m0) const;
    double max_abs() const { return tail(0); }

    /// Fitted exponential-decay certificate |c_m| <= C e^{-delta m}; returns delta and,
    /// optionally, C. Coefficients at the numerical noise floor are excluded from the fit.
    double decay_width(double* C_out = nullptr) const;

    /// Projects onto real-valued maps: c_{-m} <- conj(c_m) averaged. Max asymmetry returned.
    double enforce_real();

    FourierSeries& operator*=(double s);

private:
    int M_;
    std::vector<std::complex<double>> c_;  // index m + M_
};

/// R^2-valued real-analytic map on the circle.
struct Vec2TorusMap {
    FourierSeries x, y;
    Vec2 eval(double theta) const { return {x.eval_real(theta), y.eval_real(theta)}; }
};

/// Matrix-valued real-analytic map on the circle (entries stored as Fourier series).
struct Mat2TorusMap {
    FourierSeries e11, e12, e21, e22;

    SL2Matrix eval(double theta) const {
        return SL2Matrix::unchecked(e11.eval_real(theta), e12.eval_real(theta),
                                    e21.eval_real(theta), e22.eval_real(theta));
    }
    SL2Matrix operator()(double theta) const { return eval(theta); }

    int degree_bound() const {
        return std::max(std::max(e11.degree(), e12.degree()),
                        std::max(e21.degree(), e22.degree()));
    }

    /// Interpolating map from point samples on the uniform grid of size G (power of two).
    static Mat2TorusMap from_function(const std::function<SL2Matrix(double)>& f, int G);
};

Vec2TorusMap vec2_map_from_function(const std::function<Vec2(double)>& f, int G);

}  // namespace harper
