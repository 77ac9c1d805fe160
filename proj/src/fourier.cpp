#include "harper/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace harper {

void fft(std::vector<std::complex<double>>& data, bool inverse) {
    size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: size must be a power of two");
    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = data[i + j];
                std::complex<double> v = data[i + j + len / 2] * w;
                data[i + j] = u + v;
                data[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& z : data) z /= static_cast<double>(n);
}

std::complex<double> FourierSeries::eval(double theta) const {
    // Horner in e^{i theta} over m = -M..M
    std::complex<double> e(std::cos(theta), std::sin(theta));
    std::complex<double> acc = 0.0;
    for (int m = M_; m >= -M_; --m) acc = acc * e + c_[static_cast<size_t>(m + M_)];
    // acc = sum c_m e^{i(m+M)theta}; undo the e^{iM theta} factor
    std::complex<double> back(std::cos(M_ * theta), -std::sin(M_ * theta));
    return acc * back;
}

double FourierSeries::eval_real(double theta) const {
    double acc = c_[static_cast<size_t>(M_)].real();
    double cm = std::cos(theta), sm = std::sin(theta);
    double cn = cm, sn = sm;
    for (int m = 1; m <= M_; ++m) {
        std::complex<double> c = c_[static_cast<size_t>(m + M_)];
        acc += 2.0 * (c.real() * cn - c.imag() * sn);
        double c2 = cn * cm - sn * sm;
        sn = sn * cm + cn * sm;
        cn = c2;
    }
    return acc;
}

std::vector<double> FourierSeries::sample(int G) const {
    if (G < 2 * M_ + 2) throw std::invalid_argument("FourierSeries::sample: grid too small");
    std::vector<std::complex<double>> spec(static_cast<size_t>(G), 0.0);
    for (int m = 0; m <= M_; ++m) spec[static_cast<size_t>(m)] = coeff(m);
    for (int m = 1; m <= M_; ++m) spec[static_cast<size_t>(G - m)] = coeff(-m);
    fft(spec, true);
    std::vector<double> out(static_cast<size_t>(G));
    for (int j = 0; j < G; ++j)
        out[static_cast<size_t>(j)] = spec[static_cast<size_t>(j)].real() * G;
    return out;
}

FourierSeries FourierSeries::from_real_samples(const std::vector<double>& vals) {
    size_t G = vals.size();
    std::vector<std::complex<double>> spec(vals.begin(), vals.end());
    fft(spec, false);
    int M = static_cast<int>(G) / 2 - 1;
    FourierSeries f(M);
    for (int m = 0; m <= M; ++m) {
        f.set_coeff(m, spec[static_cast<size_t>(m)] / static_cast<double>(G));
        if (m > 0)
            f.set_coeff(-m, spec[G - static_cast<size_t>(m)] / static_cast<double>(G));
    }
    return f;
}

double FourierSeries::tail(int m0) const {
    double t = 0.0;
    for (int m = m0; m <= M_; ++m)
        t = std::max(t, std::max(std::abs(coeff(m)), std::abs(coeff(-m))));
    return t;
}

double FourierSeries::decay_width(double* C_out) const {
    double top = max_abs();
    double floor_mag = std::max(top * 1e-14, 1e-280);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int m = 1; m <= M_; ++m) {
        double mag = std::max(std::abs(coeff(m)), std::abs(coeff(-m)));
        if (mag <= floor_mag) break;
        double lx = static_cast<double>(m), ly = std::log(mag);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    if (n < 3) {
        if (C_out) *C_out = top;
        return 0.0;
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    if (C_out) *C_out = std::exp((sy - slope * sx) / n);
    return -slope;
}

double FourierSeries::enforce_real() {
    double worst = 0.0;
    for (int m = 1; m <= M_; ++m) {
        std::complex<double> p = coeff(m), q = coeff(-m);
        worst = std::max(worst, std::abs(p - std::conj(q)));
        std::complex<double> avg = 0.5 * (p + std::conj(q));
        set_coeff(m, avg);
        set_coeff(-m, std::conj(avg));
    }
    worst = std::max(worst, std::fabs(coeff(0).imag()));
    set_coeff(0, coeff(0).real());
    return worst;
}

FourierSeries& FourierSeries::operator*=(double s) {
    for (auto& z : c_) z *= s;
    return *this;
}

Mat2TorusMap Mat2TorusMap::from_function(const std::function<SL2Matrix(double)>& f, int G) {
    std::vector<double> v11(static_cast<size_t>(G)), v12(static_cast<size_t>(G)),
        v21(static_cast<size_t>(G)), v22(static_cast<size_t>(G));
    for (int j = 0; j < G; ++j) {
        SL2Matrix m = f(2.0 * M_PI * j / G);
        v11[static_cast<size_t>(j)] = m.m11;
        v12[static_cast<size_t>(j)] = m.m12;
        v21[static_cast<size_t>(j)] = m.m21;
        v22[static_cast<size_t>(j)] = m.m22;
    }
    Mat2TorusMap out;
    out.e11 = FourierSeries::from_real_samples(v11);
    out.e12 = FourierSeries::from_real_samples(v12);
    out.e21 = FourierSeries::from_real_samples(v21);
    out.e22 = FourierSeries::from_real_samples(v22);
    return out;
}

Vec2TorusMap vec2_map_from_function(const std::function<Vec2(double)>& f, int G) {
    std::vector<double> vx(static_cast<size_t>(G)), vy(static_cast<size_t>(G));
    for (int j = 0; j < G; ++j) {
        Vec2 v = f(2.0 * M_PI * j / G);
        vx[static_cast<size_t>(j)] = v.x;
        vy[static_cast<size_t>(j)] = v.y;
    }
    return {FourierSeries::from_real_samples(vx), FourierSeries::from_real_samples(vy)};
}

}  // namespace harper
