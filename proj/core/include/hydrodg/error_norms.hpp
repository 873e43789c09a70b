#ifndef HYDRODG_ERROR_NORMS_HPP
#define HYDRODG_ERROR_NORMS_HPP

#include "hydrodg/assembly.hpp"
#include "hydrodg/mesh.hpp"
#include "hydrodg/refblocks.hpp"

namespace hydrodg {

/// L2 distance between a DG field and an analytic function, evaluated with
/// an over-integrated rule (p+4 points per direction).
double compute_l2_error(const Mesh2D& mesh, const CoeffVector& coeffs,
                        const ScalarFn2D& exact);
double compute_l2_error_1d(const Mesh1D& mesh, const CoeffVector& coeffs,
                           const ScalarFn1D& exact);

/// Estimated order of convergence from two successive errors.
double compute_eoc(double err_prev, double err_cur, double dx_prev, double dx_cur);

}  // namespace hydrodg

#endif
