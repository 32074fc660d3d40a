/*
   Copyright 2026 The concat-calc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CONCAT_PDE_CERTIFICATES_HPP
#define CONCAT_PDE_CERTIFICATES_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "concat/multipoly.hpp"
#include "concat/ode_certificates.hpp"

namespace concat {

/// Certificate for the PDE decision, obtained by reducing along a plane
/// wave: a spatial frequency xi with nonvanishing leading coefficient, the
/// specialized ordinary operator p_xi, and the base certificate for p_xi.
/// The spatial factor e^{xi . x} (or e^{i xi . x} in oscillatory mode) is
/// carried symbolically by (frequency, mode); it is a nonvanishing unit, so
/// the base residual lifts to a nonzero residual for the full operator.
template <class S>
struct PlaneWaveCertificate {
    std::vector<S> frequency;  // real grid point xi
    SpatialMode mode;
    PolyOperator<S> specialized;  // p_xi, mode-adjusted
    Certificate<S> base;
};

/// Builds the plane-wave certificate. The frequency is found on the integer
/// grid unless overridden; an override with vanishing leading coefficient is
/// rejected since the reduction would lose the t-degree.
template <class S>
PlaneWaveCertificate<S> certify(const MultiPoly<S>& P, SpatialMode mode, const ContextFor<S>& ctx,
                                std::optional<std::vector<S>> frequency_override = std::nullopt) {
    const std::size_t n = tdegree(P);
    if (n == 0) throw ConstantOperatorError("certification requires t-degree >= 1");

    std::vector<S> xi;
    if (frequency_override.has_value()) {
        xi = std::move(*frequency_override);
        if (xi.size() != P.dim()) throw DimensionError("frequency override has wrong dimension");
        std::vector<S> point = detail::effective_frequency<S>(xi, mode);
        if (is_zero(P.coeff(n).eval(std::span<const S>(xi)), ctx) ||
            is_zero(P.coeff(n).eval(point), ctx))
            throw std::invalid_argument(
                "frequency override makes the leading coefficient vanish");
    } else {
        xi = witness_frequency(P, mode, ctx);
    }

    PolyOperator<S> p_xi = specialize<S>(P, xi, mode, ctx);
    Certificate<S> base = certify(p_xi, ctx);
    return PlaneWaveCertificate<S>{std::move(xi), mode, std::move(p_xi), std::move(base)};
}

/// Re-checks the whole reduction chain: witness validity, degree
/// preservation, specialization equality under the declared mode, and the
/// base certificate against the specialized operator.
template <class S>
VerifyReport verify(const PlaneWaveCertificate<S>& cert, const MultiPoly<S>& P,
                    const VerifyOptions& opt, const ContextFor<S>& ctx) {
    VerifyReport report;
    if (P.is_zero_op()) {
        report.add("operator-nonzero", false);
        return report;
    }
    const std::size_t n = tdegree(P);

    bool dim_ok = cert.frequency.size() == P.dim();
    report.add("frequency-dimension", dim_ok);
    if (!dim_ok) return report;

    report.add("witness-nonvanishing",
               !is_zero(P.coeff(n).eval(std::span<const S>(cert.frequency)), ctx),
               "leading coefficient at the real frequency");

    std::vector<S> point = detail::effective_frequency<S>(std::span<const S>(cert.frequency),
                                                          cert.mode);
    report.add("witness-keeps-t-degree", !is_zero(P.coeff(n).eval(point), ctx) &&
                                             !cert.specialized.is_zero_op() &&
                                             cert.specialized.degree() == n);

    // Recomputing with the declared mode must reproduce the stored operator;
    // a certificate claiming oscillatory mode but specialized at real xi
    // fails here.
    PolyOperator<S> recomputed = specialize<S>(P, cert.frequency, cert.mode, ctx);
    report.add("specialization-recomputed", eq(recomputed, cert.specialized, ctx));

    report.merge("base:", verify(cert.base, cert.specialized, opt, ctx));
    return report;
}

}  // namespace concat

#endif
