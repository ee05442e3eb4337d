// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#include "distvar.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "distvar/dilation.hpp"
#include "distvar/generate.hpp"
#include "distvar/io.hpp"
#include "distvar/jointspec.hpp"
#include "distvar/numkernel.hpp"
#include "distvar/pencilvariety.hpp"
#include "distvar/symdisc.hpp"

using namespace distvar;

struct dv_sigma {
    SigmaData data;
};
struct dv_cloud {
    VarietyPointCloud data;
};
struct dv_fpencil {
    FPencilData data;
};
struct dv_tuple {
    ContractionTuple data;
};

namespace {

thread_local std::string g_lastError;

dv_status mapError(Errc code) {
    switch (code) {
        case Errc::IoError: return DV_ERR_IO;
        case Errc::ParseError: return DV_ERR_PARSE;
        case Errc::ShapeError:
        case Errc::DimensionMismatch:
        case Errc::NonSquare: return DV_ERR_SHAPE;
        case Errc::InvalidArgument:
        case Errc::IndexOutOfRange:
        case Errc::EmptyCloud: return DV_ERR_INVALID_ARG;
        case Errc::UnsupportedKind: return DV_ERR_UNSUPPORTED;
        case Errc::MalformedSigma:
        case Errc::InvalidSigma: return DV_ERR_MALFORMED;
        default: return DV_ERR_NUMERIC;
    }
}

template <typename Fn>
dv_status guarded(Fn&& fn) {
    try {
        fn();
        return DV_OK;
    } catch (const Error& e) {
        g_lastError = e.what();
        return mapError(e.code());
    } catch (const std::exception& e) {
        g_lastError = e.what();
        return DV_ERR_NUMERIC;
    }
}

char* dupString(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Tolerances fromC(const dv_tolerances* tol) {
    if (!tol) return Tolerances{};
    Tolerances t;
    t.structural = tol->structural;
    t.spectral = tol->spectral;
    t.rank = tol->rank;
    t.validate();
    return t;
}

template <typename T>
void requireArg(const T* p, const char* name) {
    if (!p) throw Error(Errc::InvalidArgument, std::string("null argument: ") + name);
}

}  // namespace

extern "C" {

void dv_tolerances_default(dv_tolerances* tol) {
    if (!tol) return;
    Tolerances t;
    tol->structural = t.structural;
    tol->spectral = t.spectral;
    tol->rank = t.rank;
}

const char* dv_last_error(void) { return g_lastError.c_str(); }

const char* dv_version(void) { return "0.1.0"; }

void dv_string_free(char* s) { std::free(s); }
void dv_buffer_free(double* b) { std::free(b); }

dv_status dv_sigma_load(const char* path, dv_sigma** out) {
    return guarded([&] {
        requireArg(path, "path");
        requireArg(out, "out");
        auto s = sigmaFromMatrices(loadMatrixFile(path));
        requireWellFormedSigma(s);
        *out = new dv_sigma{std::move(s)};
    });
}

dv_status dv_sigma_generate(const char* kind, size_t n, size_t d, uint64_t seed, dv_sigma** out) {
    return guarded([&] {
        requireArg(kind, "kind");
        requireArg(out, "out");
        *out = new dv_sigma{generateSigma(sigmaKindFromString(kind), n, d, seed)};
    });
}

dv_status dv_sigma_save(const dv_sigma* s, const char* path) {
    return guarded([&] {
        requireArg(s, "sigma");
        requireArg(path, "path");
        saveMatrixFile(path, sigmaToMatrices(s->data));
    });
}

dv_status dv_sigma_dims(const dv_sigma* s, size_t* n, size_t* d) {
    return guarded([&] {
        requireArg(s, "sigma");
        if (n) *n = s->data.n;
        if (d) *d = s->data.d;
    });
}

void dv_sigma_free(dv_sigma* s) { delete s; }

dv_status dv_sigma_validate(const dv_sigma* s, const dv_tolerances* tol, size_t z_samples,
                            char** json_report, int* pass) {
    return guarded([&] {
        requireArg(s, "sigma");
        auto rep = validateSigma(s->data, fromC(tol), z_samples ? z_samples : 32);
        if (json_report) *json_report = dupString(rep.toJson());
        if (pass) *pass = rep.pass ? 1 : 0;
    });
}

dv_status dv_sigma_trace(const dv_sigma* s, const double* radii, size_t n_radii, size_t angles,
                         uint64_t seed, const dv_tolerances* tol, dv_cloud** out) {
    return guarded([&] {
        requireArg(s, "sigma");
        requireArg(radii, "radii");
        requireArg(out, "out");
        std::vector<double> r(radii, radii + n_radii);
        *out = new dv_cloud{traceVariety(s->data, r, angles, fromC(tol), seed)};
    });
}

void dv_cloud_free(dv_cloud* c) { delete c; }

size_t dv_cloud_size(const dv_cloud* c) { return c ? c->data.points.size() : 0; }

size_t dv_cloud_coords(const dv_cloud* c) { return c ? c->data.n : 0; }

dv_status dv_cloud_point(const dv_cloud* c, size_t index, double* z, double* coords, int* cls,
                         double* residual) {
    return guarded([&] {
        requireArg(c, "cloud");
        if (index >= c->data.points.size())
            throw Error(Errc::IndexOutOfRange, "cloud point index out of range");
        const VarietyPoint& p = c->data.points[index];
        if (z) {
            z[0] = p.z.real();
            z[1] = p.z.imag();
        }
        if (coords) {
            for (std::size_t i = 0; i < p.coordinates.size(); ++i) {
                coords[2 * i] = p.coordinates[i].real();
                coords[2 * i + 1] = p.coordinates[i].imag();
            }
        }
        if (cls) *cls = static_cast<int>(p.classification);
        if (residual) *residual = p.witnessResidual;
    });
}

dv_status dv_cloud_to_csv(const dv_cloud* c, char** text) {
    return guarded([&] {
        requireArg(c, "cloud");
        requireArg(text, "text");
        *text = dupString(cloudToCsv(c->data));
    });
}

dv_status dv_cloud_to_json(const dv_cloud* c, char** text) {
    return guarded([&] {
        requireArg(c, "cloud");
        requireArg(text, "text");
        *text = dupString(cloudToJson(c->data));
    });
}

dv_status dv_cloud_load(const char* path, dv_cloud** out) {
    return guarded([&] {
        requireArg(path, "path");
        requireArg(out, "out");
        *out = new dv_cloud{loadCloudFile(path)};
    });
}

dv_status dv_certify(const dv_sigma* s, const dv_cloud* cloud, size_t boundary_angles,
                     uint64_t seed, const dv_tolerances* tol, char** json_report, int* pass) {
    return guarded([&] {
        requireArg(s, "sigma");
        requireArg(cloud, "cloud");
        auto cert = certifyDistinguished(s->data, cloud->data, boundary_angles, fromC(tol), seed);
        if (json_report) *json_report = dupString(cert.toJson());
        if (pass) *pass = cert.pass ? 1 : 0;
    });
}

dv_status dv_in_gn(const double* s_reim, size_t n_minus_1, double p_re, double p_im,
                   const dv_tolerances* tol, int* membership, double* max_root_modulus) {
    return guarded([&] {
        SymPoint q;
        for (size_t i = 0; i < n_minus_1; ++i) {
            requireArg(s_reim, "s values");
            q.s.push_back({s_reim[2 * i], s_reim[2 * i + 1]});
        }
        q.p = {p_re, p_im};
        GnVerdict v = inGn(q, fromC(tol));
        if (membership) *membership = static_cast<int>(v.membership);
        if (max_root_modulus) *max_root_modulus = v.maxRootModulus;
    });
}

dv_status dv_fpencil_load(const char* path, dv_fpencil** out) {
    return guarded([&] {
        requireArg(path, "path");
        requireArg(out, "out");
        *out = new dv_fpencil{fpencilFromMatrices(loadMatrixFile(path))};
    });
}

void dv_fpencil_free(dv_fpencil* f) { delete f; }

dv_status dv_fpencil_validate(const dv_fpencil* f, size_t z_samples, uint64_t seed,
                              const dv_tolerances* tol, char** json_report, int* pass) {
    return guarded([&] {
        requireArg(f, "f-pencil");
        auto rep = validateFPencil(f->data, z_samples ? z_samples : 16, fromC(tol), seed);
        if (json_report) *json_report = dupString(rep.toJson());
        if (pass) *pass = rep.pass ? 1 : 0;
    });
}

dv_status dv_fpencil_trace(const dv_fpencil* f, const double* p_grid_reim, size_t n_p,
                           uint64_t seed, const dv_tolerances* tol, char** json_report) {
    return guarded([&] {
        requireArg(f, "f-pencil");
        requireArg(json_report, "json_report");
        std::vector<Complex> grid(n_p);
        for (size_t i = 0; i < n_p; ++i) {
            requireArg(p_grid_reim, "p grid");
            grid[i] = {p_grid_reim[2 * i], p_grid_reim[2 * i + 1]};
        }
        Tolerances t = fromC(tol);
        auto lambda = traceLambda(f->data, grid, t, seed);
        std::vector<SymPoint> qs;
        for (const auto& lp : lambda) qs.push_back(lp.q);
        auto pulled = pullbackToPolydisc(qs, t);

        nlohmann::json j;
        nlohmann::json lam = nlohmann::json::array();
        for (const auto& lp : lambda) {
            nlohmann::json e;
            nlohmann::json sv = nlohmann::json::array();
            for (const Complex& c : lp.q.s) sv.push_back({c.real(), c.imag()});
            e["s"] = sv;
            e["p"] = {lp.q.p.real(), lp.q.p.imag()};
            e["residual"] = lp.witnessResidual;
            lam.push_back(e);
        }
        j["lambda"] = lam;
        nlohmann::json pb = nlohmann::json::array();
        for (const auto& vp : pulled) {
            nlohmann::json e;
            nlohmann::json coords = nlohmann::json::array();
            for (const Complex& c : vp.coordinates) coords.push_back({c.real(), c.imag()});
            e["coords"] = coords;
            e["p"] = {vp.z.real(), vp.z.imag()};
            e["class"] = toString(vp.classification);
            e["residual"] = vp.witnessResidual;
            pb.push_back(e);
        }
        j["pullback"] = pb;
        *json_report = dupString(j.dump(2));
    });
}

dv_status dv_bidisc_fiber(const char* a_path, double z_re, double z_im, const dv_tolerances* tol,
                          double** w_reim, size_t* count) {
    return guarded([&] {
        requireArg(a_path, "a_path");
        requireArg(w_reim, "w_reim");
        requireArg(count, "count");
        NamedMatrices ms = loadMatrixFile(a_path);
        if (ms.empty()) throw Error(Errc::ParseError, "matrix file is empty");
        auto ws = bidiscDeterminantalFiber(ms.front().second, {z_re, z_im}, fromC(tol));
        *count = ws.size();
        *w_reim = static_cast<double*>(std::malloc(sizeof(double) * 2 * std::max<size_t>(ws.size(), 1)));
        for (size_t i = 0; i < ws.size(); ++i) {
            (*w_reim)[2 * i] = ws[i].real();
            (*w_reim)[2 * i + 1] = ws[i].imag();
        }
    });
}

dv_status dv_tuple_load(const char* path, dv_tuple** out) {
    return guarded([&] {
        requireArg(path, "path");
        requireArg(out, "out");
        *out = new dv_tuple{makeContractionTuple(tupleFromMatrices(loadMatrixFile(path)))};
    });
}

void dv_tuple_free(dv_tuple* t) { delete t; }

dv_status dv_certify_dilation(const dv_tuple* t, const dv_sigma* sigma_or_null, uint64_t seed,
                              size_t max_iter, const dv_tolerances* tol, char** json_report,
                              int* pass) {
    (void)seed;
    return guarded([&] {
        requireArg(t, "tuple");
        Tolerances tt = fromC(tol);
        DefectData def = defects(t->data, tt);
        bool pure = false;
        bool notContraction = false;
        try {
            pure = isPureC0(t->data.product, tt);
        } catch (const Error&) {
            notContraction = true;
        }

        nlohmann::json j;
        j["space_dim"] = t->data.m;
        j["tuple_length"] = t->data.t.size();
        j["commutator_defect"] = t->data.commutatorDefect;
        j["product_spectral_radius"] = spectralRadius(t->data.product);
        j["product_pure"] = pure && !notContraction;
        j["defect_dim"] = def.defectDim;
        j["defect_star_dim"] = def.defectStarDim;

        bool verdict = false;
        if (sigma_or_null) {
            j["mode"] = "given-sigma";
            auto validation = validateSigma(sigma_or_null->data, tt);
            j["sigma_validation"] = nlohmann::json::parse(validation.toJson());
            auto feq = checkFundamentalEqStar(t->data, sigma_or_null->data, def, tt);
            j["fundamental_eq_star"] = nlohmann::json::parse(feq.toJson());
            verdict = validation.pass && feq.pass;
        } else {
            j["mode"] = "recovered";
            if (!pure || notContraction) {
                j["failure"] = "product is not a pure contraction; recovery needs C.0";
            } else {
                auto res = solveSigmaStar(t->data, def, tt, max_iter ? max_iter : 200);
                j["residual_history"] = res.residualHistory;
                if (res.sigma) {
                    auto validation = validateSigma(*res.sigma, tt);
                    auto feq = checkFundamentalEqStar(t->data, *res.sigma, def, tt);
                    j["sigma_validation"] = nlohmann::json::parse(validation.toJson());
                    j["fundamental_eq_star"] = nlohmann::json::parse(feq.toJson());
                    j["sigma"] =
                        nlohmann::json::parse(matrixCollectionToJson(sigmaToMatrices(*res.sigma)));
                    verdict = validation.pass && feq.pass;
                } else {
                    j["failure"] = res.failureReason;
                }
            }
        }
        j["verdict"] = verdict ? "pass" : "fail";
        if (json_report) *json_report = dupString(j.dump(2));
        if (pass) *pass = verdict ? 1 : 0;
    });
}

dv_status dv_vn_check(const dv_tuple* t, const dv_cloud* cloud, const char* polys_path,
                      const dv_tolerances* tol, char** json_report, int* pass) {
    return guarded([&] {
        requireArg(t, "tuple");
        requireArg(cloud, "cloud");
        requireArg(polys_path, "polys_path");
        auto polys = loadPolynomialFile(polys_path);
        auto rep = vnCheck(t->data, cloud->data, polys, fromC(tol));
        if (json_report) *json_report = dupString(rep.toJson());
        if (pass) *pass = rep.allSatisfied ? 1 : 0;
    });
}

}  // extern "C"
