#ifndef RSMOMENT_MOMENTS_HPP
#define RSMOMENT_MOMENTS_HPP

// The six components of the moment identity and the end-to-end verification:
// M_hol + M_Maass + M_Eis on the left, M0 + M~_Maass + M~_Eis on the right.
// M~_Maass enters only as a magnitude band (its phase is never needed).

#include "rsmoment/lfun.hpp"
#include "rsmoment/maassdata.hpp"
#include "rsmoment/mainterm.hpp"

#include <string>
#include <vector>

namespace rsm {

// Budget constants; defaults recorded in every report.
struct MomentConfig {
    double tail_constant = 10.0;       // C in the M_Maass budget C k^{3/2} 2^{-k}
    double band_constant = 1e4;        // C in the M~_Maass empty-data band C sqrt(k) e^{-pi t1/2}
    double first_even_t = 13.779751351891;  // spectral parameter of the first even form
    double degree6_majorant = 1e3;     // stand-in bound for L(1/2, ad g x f)
    double tolerance_constant = 0.1;   // tolerance(k) = max(1e-6, C 2^{-k} k^{3/2}) |rhs|
};

std::vector<MaassFormData> ingest_maass_data(const std::string& path, const PrecisionContext& ctx);
std::string export_maass_data(const std::vector<MaassFormData>& data);

struct MHolResult {
    Real value{0};
    Real extraction_gap{0};  // contribution of the l < k slices
    double err = 0;
};
MHolResult m_hol(int k, const EigenformPtr& g, const PrecisionContext& ctx);

struct QuadratureResult {
    Real value{0};
    double err = 0;        // step-halving estimate plus truncation tail
    double imag_leak = 0;  // health metric, conjugate symmetry
};
QuadratureResult m_eis(int k, const EigenformPtr& g, const PrecisionContext& ctx);
QuadratureResult m_tilde_eis(int k, const EigenformPtr& g, const PrecisionContext& ctx);

struct MMaassResult {
    Real value{0};
    Real tail_budget{0};
    double err = 0;
    int forms_used = 0;
};
MMaassResult m_maass_partial(int k, const EigenformPtr& g, const std::vector<MaassFormData>& data,
                             const PrecisionContext& ctx, const MomentConfig& cfg = {});

Real m_tilde_maass_band(int k, const EigenformPtr& g, const std::vector<MaassFormData>& data,
                        const PrecisionContext& ctx, const MomentConfig& cfg = {});

struct IdentityReport {
    int k = 0;
    int g_index = 0;
    int working_digits = 0;
    Real m_hol{0}, m_maass_partial{0}, m_eis{0};
    Real extraction_gap{0};
    Real m0{0}, m_tilde_eis{0};
    Real lhs_total{0}, rhs_total{0};
    Real abs_deviation{0};
    Real tilde_maass_band{0}, neglect_budget{0};
    double quadrature_err = 0;
    Real tolerance{0};
    Real allowance{0};  // band + budget + quadrature + tolerance
    bool pass = false;
    Real margin{0};  // allowance - |lhs-rhs|
    int maass_forms_used = 0;
};

IdentityReport verify_identity(int k, int g_index, const std::vector<MaassFormData>& data,
                               const PrecisionContext& ctx, const MomentConfig& cfg = {});

// Coefficient length needed to run the full identity at weight k.
long identity_nmax(int k, const PrecisionContext& ctx);

} // namespace rsm

#endif
