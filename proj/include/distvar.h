/* distvar - distinguished sets in the polydisc via matrix pencils
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of the distvar shared library. All objects are opaque handles, all
 * functions return a dv_status; dv_last_error() describes the most recent
 * failure on the calling thread. Strings and buffers returned through out
 * parameters are owned by the caller and released with dv_string_free /
 * dv_buffer_free.
 */

#ifndef DISTVAR_H
#define DISTVAR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dv_status {
    DV_OK = 0,
    DV_ERR_IO = 1,
    DV_ERR_PARSE = 2,
    DV_ERR_SHAPE = 3,
    DV_ERR_INVALID_ARG = 4,
    DV_ERR_NUMERIC = 5,
    DV_ERR_UNSUPPORTED = 6,
    DV_ERR_MALFORMED = 7
} dv_status;

typedef struct dv_tolerances {
    double structural; /* algebraic identities, default 1e-10 */
    double spectral;   /* eigenvalue matching, default 1e-8 */
    double rank;       /* numerical rank cutoffs, default 1e-9 */
} dv_tolerances;

/* Fills in the defaults. */
void dv_tolerances_default(dv_tolerances* tol);

const char* dv_last_error(void);
const char* dv_version(void);

void dv_string_free(char* s);
void dv_buffer_free(double* b);

/* ---- pencil data (sigma) -------------------------------------------- */

typedef struct dv_sigma dv_sigma;

dv_status dv_sigma_load(const char* path, dv_sigma** out);
dv_status dv_sigma_generate(const char* kind, size_t n, size_t d, uint64_t seed, dv_sigma** out);
dv_status dv_sigma_save(const dv_sigma* s, const char* path);
dv_status dv_sigma_dims(const dv_sigma* s, size_t* n, size_t* d);
void dv_sigma_free(dv_sigma* s);

/* json_report receives the validation report; pass is 1 iff all defects are
 * within the structural tolerance. */
dv_status dv_sigma_validate(const dv_sigma* s, const dv_tolerances* tol, size_t z_samples,
                            char** json_report, int* pass);

/* ---- variety point clouds ------------------------------------------- */

typedef struct dv_cloud dv_cloud;

dv_status dv_sigma_trace(const dv_sigma* s, const double* radii, size_t n_radii, size_t angles,
                         uint64_t seed, const dv_tolerances* tol, dv_cloud** out);
void dv_cloud_free(dv_cloud* c);
size_t dv_cloud_size(const dv_cloud* c);
size_t dv_cloud_coords(const dv_cloud* c);

/* z is [re, im]; coords is 2 * dv_cloud_coords doubles; cls is 0 interior,
 * 1 boundary, 2 exterior. */
dv_status dv_cloud_point(const dv_cloud* c, size_t index, double* z, double* coords, int* cls,
                         double* residual);

dv_status dv_cloud_to_csv(const dv_cloud* c, char** text);
dv_status dv_cloud_to_json(const dv_cloud* c, char** text);
dv_status dv_cloud_load(const char* path, dv_cloud** out); /* CSV or JSON */

dv_status dv_certify(const dv_sigma* s, const dv_cloud* cloud, size_t boundary_angles,
                     uint64_t seed, const dv_tolerances* tol, char** json_report, int* pass);

/* ---- symmetrized polydisc ------------------------------------------- */

/* s_reim holds n-1 complex values interleaved re, im. membership: 0 inside,
 * 1 boundary band, 2 outside. */
dv_status dv_in_gn(const double* s_reim, size_t n_minus_1, double p_re, double p_im,
                   const dv_tolerances* tol, int* membership, double* max_root_modulus);

typedef struct dv_fpencil dv_fpencil;

dv_status dv_fpencil_load(const char* path, dv_fpencil** out);
void dv_fpencil_free(dv_fpencil* f);
dv_status dv_fpencil_validate(const dv_fpencil* f, size_t z_samples, uint64_t seed,
                              const dv_tolerances* tol, char** json_report, int* pass);

/* Lambda points over the p grid (interleaved re, im) together with the root
 * pullback to polydisc points, as one JSON document. */
dv_status dv_fpencil_trace(const dv_fpencil* f, const double* p_grid_reim, size_t n_p,
                           uint64_t seed, const dv_tolerances* tol, char** json_report);

/* w-values of det(A* + A z w - (z + w) I) = 0 for the first matrix of the
 * file at the given z. *w_reim receives 2 * *count doubles. */
dv_status dv_bidisc_fiber(const char* a_path, double z_re, double z_im, const dv_tolerances* tol,
                          double** w_reim, size_t* count);

/* ---- contraction tuples and dilation -------------------------------- */

typedef struct dv_tuple dv_tuple;

dv_status dv_tuple_load(const char* path, dv_tuple** out);
void dv_tuple_free(dv_tuple* t);

/* With a sigma: defect data plus the fundamental-equation check against it.
 * Without (sigma NULL): best-effort recovery of sigma from the tuple. pass
 * reflects the overall certificate verdict. */
dv_status dv_certify_dilation(const dv_tuple* t, const dv_sigma* sigma_or_null, uint64_t seed,
                              size_t max_iter, const dv_tolerances* tol, char** json_report,
                              int* pass);

dv_status dv_vn_check(const dv_tuple* t, const dv_cloud* cloud, const char* polys_path,
                      const dv_tolerances* tol, char** json_report, int* pass);

#ifdef __cplusplus
}
#endif

#endif /* DISTVAR_H */
