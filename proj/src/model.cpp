// SPDX-License-Identifier: Apache-2.0
#include "isac/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace isac {

std::string to_string(SicOrder order) { return order == SicOrder::c_sic ? "c-sic" : "s-sic"; }

SicOrder parse_sic_order(const std::string& text) {
    std::string t;
    for (char ch : text) {
        if (ch == '_') ch = '-';
        t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    if (t == "c-sic" || t == "csic") return SicOrder::c_sic;
    if (t == "s-sic" || t == "ssic") return SicOrder::s_sic;
    throw ConfigError("unknown SIC order '" + text + "' (expected c-sic or s-sic)");
}

CMatrix correlation_from_eigenvalues(std::span<const double> eigenvalues) {
    return CMatrix::diagonal(eigenvalues);
}

SystemConfig reference_config(double pc, double ps) {
    SystemConfig cfg;
    cfg.M = 3;
    cfg.N = 3;
    cfg.K = 3;
    cfg.L = 4;
    cfg.pc = pc;
    cfg.ps = ps;
    cfg.alpha = {0.1, 0.5, 1.0};
    const double eigs[] = {1.0, 0.1, 0.05};
    cfg.R = correlation_from_eigenvalues(eigs);
    return cfg;
}

namespace {

template <class A, class B>
void require(bool ok, const char* constraint, const char* an, A av, const char* bn, B bv) {
    if (ok) return;
    std::ostringstream os;
    os << constraint << " violated: " << an << '=' << av << ", " << bn << '=' << bv;
    throw ConfigError(os.str());
}

}  // namespace

const SystemConfig& validate_config(const SystemConfig& cfg) {
    if (cfg.M == 0 || cfg.N == 0 || cfg.K == 0 || cfg.L == 0) {
        std::ostringstream os;
        os << "dimensions >= 1 violated: M=" << cfg.M << ", N=" << cfg.N << ", K=" << cfg.K << ", L=" << cfg.L;
        throw ConfigError(os.str());
    }
    require(cfg.M >= cfg.N, "M >= N", "M", cfg.M, "N", cfg.N);
    require(cfg.M >= cfg.K, "M >= K", "M", cfg.M, "K", cfg.K);
    require(cfg.L >= cfg.M, "L >= M", "L", cfg.L, "M", cfg.M);
    require(cfg.L >= cfg.N, "L >= N", "L", cfg.L, "N", cfg.N);
    require(cfg.alpha.size() == cfg.K, "len(alpha) == K", "len(alpha)", cfg.alpha.size(), "K", cfg.K);
    for (std::size_t k = 0; k < cfg.K; ++k) {
        if (!(cfg.alpha[k] > 0.0) || !std::isfinite(cfg.alpha[k])) {
            std::ostringstream os;
            os << "alpha_k > 0 violated: alpha_" << (k + 1) << '=' << cfg.alpha[k];
            throw ConfigError(os.str());
        }
    }
    require(cfg.R.rows() == cfg.N && cfg.R.cols() == cfg.N, "R is N x N", "R rows", cfg.R.rows(), "N", cfg.N);
    if (!is_hermitian(cfg.R)) throw ConfigError("R Hermitian violated");
    const HermitianEig eig = hermitian_eig(cfg.R);
    if (!(eig.values.back() > 0.0)) {
        std::ostringstream os;
        os << "R positive definite violated: smallest eigenvalue=" << eig.values.back();
        throw ConfigError(os.str());
    }
    if (!(cfg.pc >= 0.0) || !std::isfinite(cfg.pc)) {
        std::ostringstream os;
        os << "pc >= 0 violated: pc=" << cfg.pc;
        throw ConfigError(os.str());
    }
    if (!(cfg.ps >= 0.0) || !std::isfinite(cfg.ps)) {
        std::ostringstream os;
        os << "ps >= 0 violated: ps=" << cfg.ps;
        throw ConfigError(os.str());
    }
    return cfg;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

CMatrix sample_channel_unsorted(const SystemConfig& cfg, Rng& rng) {
    CMatrix h = sample_complex_gaussian(cfg.M, cfg.K, rng);
    for (std::size_t m = 0; m < cfg.M; ++m)
        for (std::size_t k = 0; k < cfg.K; ++k) h(m, k) *= std::sqrt(cfg.alpha[k]);
    return h;
}

void sample_channel_into(const SystemConfig& cfg, Rng& rng, ChannelRealization& out) {
    const std::size_t M = cfg.M, K = cfg.K;
    thread_local std::vector<cplx> raw;
    thread_local std::vector<double> norms;
    raw.resize(M * K);
    norms.assign(K, 0.0);
    fill_complex_gaussian(raw, rng);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t k = 0; k < K; ++k) {
            cplx& v = raw[m * K + k];
            v *= std::sqrt(cfg.alpha[k]);
            norms[k] += std::norm(v);
        }

    out.user.resize(K);
    std::iota(out.user.begin(), out.user.end(), std::size_t{0});
    std::stable_sort(out.user.begin(), out.user.end(), [&](std::size_t a, std::size_t b) { return norms[a] < norms[b]; });

    if (out.H.rows() != M || out.H.cols() != K) out.H = CMatrix(M, K);
    out.column_norms.resize(K);
    for (std::size_t j = 0; j < K; ++j) {
        const std::size_t src = out.user[j];
        out.column_norms[j] = std::sqrt(norms[src]);
        for (std::size_t m = 0; m < M; ++m) out.H(m, j) = raw[m * K + src];
    }
}

ChannelRealization sample_channel(const SystemConfig& cfg, Rng& rng) {
    ChannelRealization out;
    sample_channel_into(cfg, rng, out);
    return out;
}

TargetResponse sample_target_response(const SystemConfig& cfg, Rng& rng) {
    return TargetResponse{correlated_columns(cfg.R, cfg.M, rng)};
}

std::vector<cplx> sample_interference_row(const SystemConfig& cfg, Rng& rng) {
    const CMatrix h = sample_channel_unsorted(cfg, rng);
    const std::size_t m = 0;  // rows are identically distributed
    std::vector<cplx> z(cfg.L);
    fill_complex_gaussian(z, rng);
    std::vector<cplx> x(cfg.L);
    const double amp = std::sqrt(cfg.pc);
    for (std::size_t k = 0; k < cfg.K; ++k) {
        fill_complex_gaussian(x, rng);
        const cplx coeff = std::conj(h(m, k)) * amp;
        for (std::size_t l = 0; l < cfg.L; ++l) z[l] += coeff * x[l];
    }
    return z;
}

std::vector<cplx> sample_echo_plus_noise(const SystemConfig& cfg, std::span<const cplx> slot_waveform, Rng& rng) {
    if (slot_waveform.size() != cfg.N) throw StructuralError("sample_echo_plus_noise: waveform length must be N");
    const TargetResponse target = sample_target_response(cfg, rng);
    std::vector<cplx> a(cfg.M);
    fill_complex_gaussian(a, rng);
    for (std::size_t m = 0; m < cfg.M; ++m)
        for (std::size_t n = 0; n < cfg.N; ++n) a[m] += std::conj(target.G(n, m)) * slot_waveform[n];
    return a;
}

}  // namespace isac
