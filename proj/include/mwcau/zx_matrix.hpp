#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mwcau/zx.hpp"

namespace mwcau {

struct ZXMatrix {
    std::size_t rows = 0;  // 2^|outputs|
    std::size_t cols = 0;  // 2^|inputs|
    std::vector<std::complex<double>> a;  // row-major

    std::complex<double>& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const std::complex<double>& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

// Dense linear map of a diagram, input/output qubit 0 as the most significant
// bit. Wires carry binary indices; a Z(alpha) spider contributes 1 when every
// incident wire end reads 0, e^{i alpha} when every end reads 1, and 0
// otherwise; an X(alpha) spider contributes 1 + e^{i alpha} (-1)^{sum of its
// ends}. Global scalars (including per-spider normalisation) are dropped, so
// results are meaningful up to a nonzero factor.
inline ZXMatrix to_matrix(const ZXDiagram& d) {
    d.ensure_valid();
    const std::size_t ni = d.inputs.size(), no = d.outputs.size();
    if (ni + no > 8)
        throw Error("to_matrix: " + std::to_string(ni + no) + " boundary wires exceed the limit of 8");
    if (d.spiders.size() > 16)
        throw Error("to_matrix: " + std::to_string(d.spiders.size()) + " spiders exceed the limit of 16");

    std::map<std::string, std::size_t> spider_at;
    for (std::size_t i = 0; i < d.spiders.size(); ++i) spider_at[d.spiders[i].id] = i;
    // boundary name -> bit extractor over (row, col)
    struct Boundary {
        bool input = false;
        std::size_t shift = 0;
    };
    std::map<std::string, Boundary> bnd;
    for (std::size_t i = 0; i < ni; ++i) bnd[d.inputs[i]] = {true, ni - 1 - i};
    for (std::size_t i = 0; i < no; ++i) bnd[d.outputs[i]] = {false, no - 1 - i};

    std::vector<std::vector<std::size_t>> inc(d.spiders.size());  // wire index per end
    std::vector<std::vector<Boundary>> forced(d.wires.size());
    std::vector<std::size_t> internal;
    for (std::size_t w = 0; w < d.wires.size(); ++w) {
        for (const std::string& end : {d.wires[w].first, d.wires[w].second}) {
            auto s = spider_at.find(end);
            if (s != spider_at.end())
                inc[s->second].push_back(w);
            else
                forced[w].push_back(bnd.at(end));
        }
        if (forced[w].empty()) internal.push_back(w);
    }
    if (internal.size() > 16)
        throw Error("to_matrix: " + std::to_string(internal.size()) +
                    " internal wires exceed the limit of 16");

    std::vector<std::complex<double>> phase_factor(d.spiders.size());
    for (std::size_t i = 0; i < d.spiders.size(); ++i)
        phase_factor[i] = std::polar(1.0, d.spiders[i].phase.radians());

    ZXMatrix M;
    M.rows = std::size_t{1} << no;
    M.cols = std::size_t{1} << ni;
    M.a.assign(M.rows * M.cols, 0.0);
    std::vector<int> val(d.wires.size(), 0);
    for (std::size_t r = 0; r < M.rows; ++r)
        for (std::size_t c = 0; c < M.cols; ++c) {
            bool contradiction = false;
            for (std::size_t w = 0; w < d.wires.size() && !contradiction; ++w) {
                if (forced[w].empty()) continue;
                auto bit = [&](const Boundary& b) {
                    return static_cast<int>(((b.input ? c : r) >> b.shift) & 1u);
                };
                val[w] = bit(forced[w][0]);
                if (forced[w].size() == 2 && bit(forced[w][1]) != val[w]) contradiction = true;
            }
            if (contradiction) continue;
            std::complex<double> sum = 0.0;
            for (std::size_t m = 0; m < (std::size_t{1} << internal.size()); ++m) {
                for (std::size_t j = 0; j < internal.size(); ++j)
                    val[internal[j]] = static_cast<int>((m >> j) & 1u);
                std::complex<double> prod = 1.0;
                for (std::size_t i = 0; i < d.spiders.size() && prod != 0.0; ++i) {
                    if (d.spiders[i].color == SpiderColor::Z) {
                        bool all0 = true, all1 = true;
                        for (std::size_t w : inc[i]) (val[w] ? all0 : all1) = false;
                        if (all0 && all1)  // bare spider: both branches survive
                            prod *= 1.0 + phase_factor[i];
                        else if (all0)
                            prod *= 1.0;
                        else if (all1)
                            prod *= phase_factor[i];
                        else
                            prod = 0.0;
                    } else {
                        int parity = 0;
                        for (std::size_t w : inc[i]) parity ^= val[w];
                        prod *= 1.0 + (parity ? -phase_factor[i] : phase_factor[i]);
                    }
                }
                sum += prod;
            }
            M.at(r, c) = sum;
        }
    return M;
}

// Equality up to a nonzero complex scalar: both matrices are divided by the
// entry where the first matrix peaks in modulus, then compared entrywise.
inline bool matrices_proportional(const ZXMatrix& A, const ZXMatrix& B, double tol = 1e-9) {
    if (A.rows != B.rows || A.cols != B.cols) return false;
    std::size_t ka = 0, kb = 0;
    for (std::size_t k = 0; k < A.a.size(); ++k) {
        if (std::abs(A.a[k]) > std::abs(A.a[ka])) ka = k;
        if (std::abs(B.a[k]) > std::abs(B.a[kb])) kb = k;
    }
    const double ma = A.a.empty() ? 0.0 : std::abs(A.a[ka]);
    const double mb = B.a.empty() ? 0.0 : std::abs(B.a[kb]);
    if (ma <= tol && mb <= tol) return true;  // both vanish
    if (ma <= tol || mb <= tol) return false;
    // If they were proportional, A's peak position would be a peak of B too.
    if (std::abs(B.a[ka]) < tol * mb) return false;
    for (std::size_t k = 0; k < A.a.size(); ++k)
        if (std::abs(A.a[k] / A.a[ka] - B.a[k] / B.a[ka]) > tol) return false;
    return true;
}

}  // namespace mwcau
