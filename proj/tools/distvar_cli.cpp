// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the distvar shared library exclusively
// through its C API. Exit codes: 0 pass, 2 check failed, 1 usage/IO/numeric
// error. Diagnostics go to stderr, data to stdout or --out.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "distvar.h"

namespace {

struct RunConfig {
    dv_tolerances tol{};
    uint64_t seed = 0x5eed;
    std::vector<double> gridRadii{0.2, 0.4, 0.6, 0.8, 0.95};
    size_t gridAngles = 64;
    size_t boundaryAngles = 360;
    std::string outputFormat = "csv";
};

[[noreturn]] void die(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(1);
}

void check(dv_status st) {
    if (st != DV_OK) die(dv_last_error());
}

struct StringOut {
    char* s = nullptr;
    ~StringOut() { dv_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

void emit(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(outPath, std::ios::binary);
    if (!f) die("cannot open '" + outPath + "' for writing");
    f << text;
    if (!f) die("write to '" + outPath + "' failed");
}

// Accepts "re", "re,im", and "re+imi"/"re-imi".
std::complex<double> parseComplex(const std::string& s) {
    std::string t = s;
    auto comma = t.find(',');
    try {
        if (comma != std::string::npos)
            return {std::stod(t.substr(0, comma)), std::stod(t.substr(comma + 1))};
        if (!t.empty() && t.back() == 'i') {
            t.pop_back();
            auto split = t.find_last_of("+-");
            if (split != std::string::npos && split > 0)
                return {std::stod(t.substr(0, split)), std::stod(t.substr(split))};
            return {0.0, std::stod(t.empty() || t == "+" ? "1" : t == "-" ? "-1" : t)};
        }
        return {std::stod(t), 0.0};
    } catch (const std::exception&) {
        die("cannot parse complex value '" + s + "' (use re or re,im)");
    }
}

void loadConfigFile(RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) die("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        die("config file: " + std::string(e.what()));
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        cfg.tol.structural = t.value("structural", cfg.tol.structural);
        cfg.tol.spectral = t.value("spectral", cfg.tol.spectral);
        cfg.tol.rank = t.value("rank", cfg.tol.rank);
    }
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("gridRadii")) cfg.gridRadii = j["gridRadii"].get<std::vector<double>>();
    cfg.gridAngles = j.value("gridAngles", cfg.gridAngles);
    cfg.boundaryAngles = j.value("boundaryAngles", cfg.boundaryAngles);
    cfg.outputFormat = j.value("outputFormat", cfg.outputFormat);
}

using SigmaPtr = std::unique_ptr<dv_sigma, decltype(&dv_sigma_free)>;
using CloudPtr = std::unique_ptr<dv_cloud, decltype(&dv_cloud_free)>;
using TuplePtr = std::unique_ptr<dv_tuple, decltype(&dv_tuple_free)>;
using FPencilPtr = std::unique_ptr<dv_fpencil, decltype(&dv_fpencil_free)>;

SigmaPtr loadSigma(const std::string& path) {
    dv_sigma* s = nullptr;
    check(dv_sigma_load(path.c_str(), &s));
    return {s, dv_sigma_free};
}

CloudPtr trace(const dv_sigma* s, const RunConfig& cfg) {
    dv_cloud* c = nullptr;
    check(dv_sigma_trace(s, cfg.gridRadii.data(), cfg.gridRadii.size(), cfg.gridAngles, cfg.seed,
                         &cfg.tol, &c));
    return {c, dv_cloud_free};
}

std::string cloudText(const dv_cloud* c, const std::string& format) {
    StringOut text;
    if (format == "json")
        check(dv_cloud_to_json(c, &text.s));
    else
        check(dv_cloud_to_csv(c, &text.s));
    return text.str();
}

void emitPlotFiles(const dv_cloud* c, const std::string& prefix) {
    size_t n = dv_cloud_coords(c);
    size_t count = dv_cloud_size(c);
    std::vector<double> coords(2 * n);
    for (size_t i = 0; i < n; ++i) {
        std::string path = prefix + "-z" + std::to_string(i + 1) + ".dat";
        std::ofstream f(path);
        if (!f) die("cannot open '" + path + "' for writing");
        for (size_t k = 0; k < count; ++k) {
            check(dv_cloud_point(c, k, nullptr, coords.data(), nullptr, nullptr));
            char line[80];
            std::snprintf(line, sizeof(line), "%.17g %.17g\n", coords[2 * i], coords[2 * i + 1]);
            f << line;
        }
    }
}

int reportAndVerdict(const std::string& json, int pass, const std::string& outPath) {
    emit(json, outPath);
    return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distinguished sets in the polydisc via matrix pencils"};
    app.require_subcommand(1);
    app.set_version_flag("--version", dv_version());

    RunConfig cfg;
    dv_tolerances_default(&cfg.tol);
    std::string configPath, outPath;
    app.add_option("--config", configPath, "JSON config file (tolerances, seed, grid)");
    app.add_option("--out", outPath, "write data output to this file instead of stdout");
    app.add_option("--seed", cfg.seed, "random seed (DISTVAR_SEED overrides)");
    app.add_option("--tol-structural", cfg.tol.structural, "tolerance for algebraic identities");
    app.add_option("--tol-spectral", cfg.tol.spectral, "tolerance for eigenvalue matching");
    app.add_option("--tol-rank", cfg.tol.rank, "numerical rank cutoff");
    app.add_option("--radii", cfg.gridRadii, "grid radii in (0,1]");
    app.add_option("--angles", cfg.gridAngles, "angle count per radius");
    app.add_option("--boundary-angles", cfg.boundaryAngles, "boundary sample count");
    app.add_option("--format", cfg.outputFormat, "cloud output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // validate-sigma
    std::string sigmaPath;
    auto* cmdValidate = app.add_subcommand("validate-sigma", "check pencil data conditions");
    cmdValidate->add_option("file", sigmaPath, "sigma matrix file")->required();

    // trace
    std::string emitPlot;
    auto* cmdTrace = app.add_subcommand("trace", "trace the variety over a polar grid");
    cmdTrace->add_option("file", sigmaPath, "sigma matrix file")->required();
    cmdTrace->add_option("--emit-plot", emitPlot, "also write two-column plot files with this prefix");

    // certify
    auto* cmdCertify = app.add_subcommand("certify", "certify the traced set as distinguished");
    cmdCertify->add_option("file", sigmaPath, "sigma matrix file")->required();

    // in-gn
    std::vector<std::string> gnValues;
    auto* cmdInGn = app.add_subcommand("in-gn", "symmetrized polydisc membership");
    cmdInGn->add_option("values", gnValues, "s_1 .. s_{n-1} p (each re or re,im)")
        ->required()
        ->expected(-2);

    // trace-fpencil
    std::string fpencilPath;
    std::vector<std::string> pGridArg;
    auto* cmdFTrace = app.add_subcommand("trace-fpencil", "trace Lambda and its polydisc pullback");
    cmdFTrace->add_option("file", fpencilPath, "F-pencil matrix file")->required();
    cmdFTrace->add_option("--pgrid", pGridArg, "explicit p values (re or re,im)");

    // bidisc-fiber
    std::string aPath, zArg;
    auto* cmdBidisc = app.add_subcommand("bidisc-fiber", "w-values of the bidisc determinantal fiber");
    cmdBidisc->add_option("file", aPath, "matrix file holding A")->required();
    cmdBidisc->add_option("--z", zArg, "base point (re or re,im)")->required();

    // certify-dilation
    std::string tuplePath, dilSigmaPath;
    size_t maxIter = 200;
    auto* cmdDilation = app.add_subcommand("certify-dilation", "defects, purity and model certificate");
    cmdDilation->add_option("file", tuplePath, "tuple matrix file (T1..Tn)")->required();
    cmdDilation->add_option("--sigma", dilSigmaPath, "check against this sigma instead of recovering");
    cmdDilation->add_option("--max-iter", maxIter, "iteration cap for recovery");

    // vn-check
    std::string cloudPath, polysPath;
    auto* cmdVn = app.add_subcommand("vn-check", "polynomial bound against a variety cloud");
    cmdVn->add_option("tuple", tuplePath, "tuple matrix file")->required();
    cmdVn->add_option("cloud", cloudPath, "point cloud file (csv or json)")->required();
    cmdVn->add_option("polys", polysPath, "polynomial list file")->required();

    // gen
    std::string genKind = "diagonal";
    size_t genN = 2, genD = 2;
    auto* cmdGen = app.add_subcommand("gen", "generate seeded pencil data");
    cmdGen->add_option("--kind", genKind, "diagonal, swaplike, or conjugated-diagonal");
    cmdGen->add_option("--n", genN, "tuple length");
    cmdGen->add_option("--d", genD, "matrix dimension");

    // Let global options appear after the subcommand name too.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (!configPath.empty()) {
        // Explicit command-line values win over the config file.
        RunConfig fileCfg = cfg;
        loadConfigFile(fileCfg, configPath);
        if (!app.count("--seed")) cfg.seed = fileCfg.seed;
        if (!app.count("--tol-structural")) cfg.tol.structural = fileCfg.tol.structural;
        if (!app.count("--tol-spectral")) cfg.tol.spectral = fileCfg.tol.spectral;
        if (!app.count("--tol-rank")) cfg.tol.rank = fileCfg.tol.rank;
        if (!app.count("--radii")) cfg.gridRadii = fileCfg.gridRadii;
        if (!app.count("--angles")) cfg.gridAngles = fileCfg.gridAngles;
        if (!app.count("--boundary-angles")) cfg.boundaryAngles = fileCfg.boundaryAngles;
        if (!app.count("--format")) cfg.outputFormat = fileCfg.outputFormat;
    }
    if (const char* env = std::getenv("DISTVAR_SEED")) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            die("DISTVAR_SEED must be an unsigned integer");
        }
    }

    if (*cmdValidate) {
        SigmaPtr s = loadSigma(sigmaPath);
        StringOut rep;
        int pass = 0;
        check(dv_sigma_validate(s.get(), &cfg.tol, 32, &rep.s, &pass));
        return reportAndVerdict(rep.str(), pass, outPath);
    }

    if (*cmdTrace) {
        SigmaPtr s = loadSigma(sigmaPath);
        CloudPtr c = trace(s.get(), cfg);
        if (!emitPlot.empty()) emitPlotFiles(c.get(), emitPlot);
        emit(cloudText(c.get(), cfg.outputFormat), outPath);
        return 0;
    }

    if (*cmdCertify) {
        SigmaPtr s = loadSigma(sigmaPath);
        CloudPtr c = trace(s.get(), cfg);
        StringOut rep;
        int pass = 0;
        check(dv_certify(s.get(), c.get(), cfg.boundaryAngles, cfg.seed, &cfg.tol, &rep.s, &pass));
        return reportAndVerdict(rep.str(), pass, outPath);
    }

    if (*cmdInGn) {
        std::vector<double> sValues;
        for (size_t i = 0; i + 1 < gnValues.size(); ++i) {
            auto c = parseComplex(gnValues[i]);
            sValues.push_back(c.real());
            sValues.push_back(c.imag());
        }
        auto p = parseComplex(gnValues.back());
        int membership = 0;
        double maxMod = 0.0;
        check(dv_in_gn(sValues.data(), gnValues.size() - 1, p.real(), p.imag(), &cfg.tol,
                       &membership, &maxMod));
        nlohmann::json j;
        j["membership"] = membership == 0 ? "inside" : membership == 1 ? "boundary" : "outside";
        j["max_root_modulus"] = maxMod;
        emit(j.dump(2), outPath);
        return membership == 2 ? 2 : 0;
    }

    if (*cmdFTrace) {
        dv_fpencil* fRaw = nullptr;
        check(dv_fpencil_load(fpencilPath.c_str(), &fRaw));
        FPencilPtr f(fRaw, dv_fpencil_free);
        std::vector<double> grid;
        if (!pGridArg.empty()) {
            for (const auto& s : pGridArg) {
                auto c = parseComplex(s);
                grid.push_back(c.real());
                grid.push_back(c.imag());
            }
        } else {
            const double twoPi = 2.0 * std::acos(-1.0);
            for (double r : cfg.gridRadii)
                for (size_t k = 0; k < cfg.gridAngles; ++k) {
                    double th = twoPi * double(k) / double(cfg.gridAngles);
                    grid.push_back(r * std::cos(th));
                    grid.push_back(r * std::sin(th));
                }
        }
        StringOut rep;
        check(dv_fpencil_trace(f.get(), grid.data(), grid.size() / 2, cfg.seed, &cfg.tol, &rep.s));
        emit(rep.str(), outPath);
        return 0;
    }

    if (*cmdBidisc) {
        auto z = parseComplex(zArg);
        double* w = nullptr;
        size_t count = 0;
        check(dv_bidisc_fiber(aPath.c_str(), z.real(), z.imag(), &cfg.tol, &w, &count));
        nlohmann::json j;
        j["z"] = {z.real(), z.imag()};
        nlohmann::json ws = nlohmann::json::array();
        for (size_t i = 0; i < count; ++i) ws.push_back({w[2 * i], w[2 * i + 1]});
        j["w"] = ws;
        dv_buffer_free(w);
        emit(j.dump(2), outPath);
        return 0;
    }

    if (*cmdDilation) {
        dv_tuple* tRaw = nullptr;
        check(dv_tuple_load(tuplePath.c_str(), &tRaw));
        TuplePtr t(tRaw, dv_tuple_free);
        SigmaPtr s(nullptr, dv_sigma_free);
        if (!dilSigmaPath.empty()) s = loadSigma(dilSigmaPath);
        StringOut rep;
        int pass = 0;
        check(dv_certify_dilation(t.get(), s.get(), cfg.seed, maxIter, &cfg.tol, &rep.s, &pass));
        return reportAndVerdict(rep.str(), pass, outPath);
    }

    if (*cmdVn) {
        dv_tuple* tRaw = nullptr;
        check(dv_tuple_load(tuplePath.c_str(), &tRaw));
        TuplePtr t(tRaw, dv_tuple_free);
        dv_cloud* cRaw = nullptr;
        check(dv_cloud_load(cloudPath.c_str(), &cRaw));
        CloudPtr c(cRaw, dv_cloud_free);
        StringOut rep;
        int pass = 0;
        check(dv_vn_check(t.get(), c.get(), polysPath.c_str(), &cfg.tol, &rep.s, &pass));
        return reportAndVerdict(rep.str(), pass, outPath);
    }

    if (*cmdGen) {
        dv_sigma* sRaw = nullptr;
        check(dv_sigma_generate(genKind.c_str(), genN, genD, cfg.seed, &sRaw));
        SigmaPtr s(sRaw, dv_sigma_free);
        if (outPath.empty()) die("gen requires --out <file>");
        check(dv_sigma_save(s.get(), outPath.c_str()));
        std::cerr << "wrote sigma (kind " << genKind << ", n=" << genN << ", d=" << genD
                  << ", seed=" << cfg.seed << ") to " << outPath << "\n";
        return 0;
    }

    return 1;
}
