// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#include "distvar/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace distvar {

namespace {

using nlohmann::json;

// %.17g round-trips doubles bit-exactly and is locale independent.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Complex parseComplexPair(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(Errc::ParseError, std::string(where) + ": complex values must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix parseMatrixEntry(const json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw Error(Errc::ParseError, "matrix entry needs rows, cols, data");
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const json& data = j.at("data");
    if (!data.is_array() || data.size() != rows)
        throw Error(Errc::ShapeError, "matrix data row count differs from rows");
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = data[i];
        if (!row.is_array() || row.size() != cols)
            throw Error(Errc::ShapeError, "ragged matrix row at index " + std::to_string(i));
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = parseComplexPair(row[k], "matrix data");
    }
    if (!m.allFinite()) throw Error(Errc::ShapeError, "matrix contains non-finite entries");
    return m;
}

json matrixToJsonEntry(const std::string& name, const ComplexMatrix& m) {
    json entry;
    entry["name"] = name;
    entry["rows"] = m.rows();
    entry["cols"] = m.cols();
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back({m(i, k).real(), m(i, k).imag()});
        data.push_back(row);
    }
    entry["data"] = data;
    return entry;
}

const ComplexMatrix& findNamed(const NamedMatrices& ms, const std::string& name) {
    for (const auto& [n, m] : ms)
        if (n == name) return m;
    throw Error(Errc::ParseError, "missing matrix '" + name + "' in collection");
}

std::size_t countPrefixed(const NamedMatrices& ms, const std::string& prefix) {
    std::size_t n = 0;
    while (true) {
        std::string want = prefix + std::to_string(n + 1);
        bool found = false;
        for (const auto& [name, m] : ms)
            if (name == want) found = true;
        if (!found) break;
        ++n;
    }
    return n;
}

}  // namespace

std::string readTextFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void writeTextFile(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error(Errc::IoError, "write to '" + path + "' failed");
}

NamedMatrices parseMatrixCollection(const std::string& jsonText) {
    json j;
    try {
        j = json::parse(jsonText);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("matrix file: ") + e.what());
    }
    if (!j.is_array()) throw Error(Errc::ParseError, "matrix file: top level must be a list");
    NamedMatrices out;
    for (const auto& entry : j) {
        std::string name = entry.value("name", "");
        out.emplace_back(name, parseMatrixEntry(entry));
    }
    return out;
}

NamedMatrices loadMatrixFile(const std::string& path) {
    return parseMatrixCollection(readTextFile(path));
}

std::string matrixCollectionToJson(const NamedMatrices& matrices) {
    json j = json::array();
    for (const auto& [name, m] : matrices) j.push_back(matrixToJsonEntry(name, m));
    return j.dump(2);
}

void saveMatrixFile(const std::string& path, const NamedMatrices& matrices) {
    writeTextFile(path, matrixCollectionToJson(matrices) + "\n");
}

SigmaData sigmaFromMatrices(const NamedMatrices& matrices) {
    std::size_t n = countPrefixed(matrices, "P");
    if (n == 0 || countPrefixed(matrices, "U") != n)
        throw Error(Errc::ParseError, "sigma file must contain P1..Pn and U1..Un");
    SigmaData s;
    s.n = n;
    for (std::size_t i = 1; i <= n; ++i) {
        s.projections.push_back(findNamed(matrices, "P" + std::to_string(i)));
        s.unitaries.push_back(findNamed(matrices, "U" + std::to_string(i)));
    }
    s.d = s.projections.front().rows();
    return s;
}

NamedMatrices sigmaToMatrices(const SigmaData& s) {
    NamedMatrices out;
    for (std::size_t i = 0; i < s.n; ++i)
        out.emplace_back("P" + std::to_string(i + 1), s.projections[i]);
    for (std::size_t i = 0; i < s.n; ++i)
        out.emplace_back("U" + std::to_string(i + 1), s.unitaries[i]);
    return out;
}

std::vector<ComplexMatrix> tupleFromMatrices(const NamedMatrices& matrices) {
    std::size_t n = countPrefixed(matrices, "T");
    if (n == 0) throw Error(Errc::ParseError, "tuple file must contain T1..Tn");
    std::vector<ComplexMatrix> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(findNamed(matrices, "T" + std::to_string(i)));
    return out;
}

FPencilData fpencilFromMatrices(const NamedMatrices& matrices) {
    std::size_t m = countPrefixed(matrices, "F");
    if (m == 0) throw Error(Errc::ParseError, "f-pencil file must contain F1..F{n-1}");
    FPencilData f;
    f.n = m + 1;
    for (std::size_t i = 1; i <= m; ++i) f.f.push_back(findNamed(matrices, "F" + std::to_string(i)));
    return f;
}

std::string cloudToCsv(const VarietyPointCloud& cloud) {
    std::ostringstream ss;
    ss << "z_re,z_im";
    for (std::size_t i = 1; i <= cloud.n; ++i) ss << ",z" << i << "_re,z" << i << "_im";
    ss << ",class,residual\n";
    for (const auto& p : cloud.points) {
        ss << fmt(p.z.real()) << ',' << fmt(p.z.imag());
        for (const Complex& c : p.coordinates) ss << ',' << fmt(c.real()) << ',' << fmt(c.imag());
        ss << ',' << toString(p.classification) << ',' << fmt(p.witnessResidual) << '\n';
    }
    return ss.str();
}

VarietyPointCloud cloudFromCsv(const std::string& csvText) {
    std::istringstream in(csvText);
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "cloud csv: empty input");
    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 4 || header.front() != "z_re" || header.back() != "residual")
        throw Error(Errc::ParseError, "cloud csv: unexpected header");
    std::size_t n = (header.size() - 4) / 2;

    VarietyPointCloud cloud;
    cloud.n = n;
    cloud.grid = "csv";
    std::size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::string> cells;
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != header.size())
            throw Error(Errc::ParseError, "cloud csv: wrong column count at line " +
                                              std::to_string(lineNo));
        auto num = [&](std::size_t idx) {
            try {
                return std::stod(cells[idx]);
            } catch (...) {
                throw Error(Errc::ParseError, "cloud csv: bad number at line " +
                                                  std::to_string(lineNo));
            }
        };
        VarietyPoint p;
        p.z = {num(0), num(1)};
        for (std::size_t i = 0; i < n; ++i)
            p.coordinates.push_back({num(2 + 2 * i), num(3 + 2 * i)});
        p.classification = pointClassFromString(cells[2 + 2 * n]);
        p.witnessResidual = num(3 + 2 * n);
        cloud.points.push_back(std::move(p));
    }
    return cloud;
}

std::string cloudToJson(const VarietyPointCloud& cloud) {
    json j;
    j["n"] = cloud.n;
    j["grid"] = cloud.grid;
    json pts = json::array();
    for (const auto& p : cloud.points) {
        json e;
        e["z"] = {p.z.real(), p.z.imag()};
        json coords = json::array();
        for (const Complex& c : p.coordinates) coords.push_back({c.real(), c.imag()});
        e["coords"] = coords;
        e["class"] = toString(p.classification);
        e["residual"] = p.witnessResidual;
        pts.push_back(e);
    }
    j["points"] = pts;
    return j.dump(2);
}

VarietyPointCloud cloudFromJson(const std::string& jsonText) {
    json j;
    try {
        j = json::parse(jsonText);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("cloud json: ") + e.what());
    }
    VarietyPointCloud cloud;
    cloud.n = j.at("n").get<std::size_t>();
    cloud.grid = j.value("grid", "json");
    for (const auto& e : j.at("points")) {
        VarietyPoint p;
        p.z = parseComplexPair(e.at("z"), "cloud json");
        for (const auto& c : e.at("coords"))
            p.coordinates.push_back(parseComplexPair(c, "cloud json"));
        if (p.coordinates.size() != cloud.n)
            throw Error(Errc::ShapeError, "cloud json: coordinate count differs from n");
        p.classification = pointClassFromString(e.at("class").get<std::string>());
        p.witnessResidual = e.at("residual").get<double>();
        cloud.points.push_back(std::move(p));
    }
    return cloud;
}

VarietyPointCloud loadCloudFile(const std::string& path) {
    std::string text = readTextFile(path);
    std::size_t pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && (text[pos] == '{' || text[pos] == '['))
        return cloudFromJson(text);
    return cloudFromCsv(text);
}

std::vector<MatPoly> parsePolynomials(const std::string& jsonText) {
    json j;
    try {
        j = json::parse(jsonText);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("polynomial file: ") + e.what());
    }
    if (!j.is_array()) throw Error(Errc::ParseError, "polynomial file: top level must be a list");
    std::vector<MatPoly> out;
    for (const auto& e : j) {
        MatPoly p;
        p.name = e.value("name", "p" + std::to_string(out.size() + 1));
        p.vars = e.at("vars").get<std::size_t>();
        for (const auto& te : e.at("terms")) {
            MatPolyTerm term;
            for (const auto& exp : te.at("exponents")) term.exponents.push_back(exp.get<unsigned>());
            if (term.exponents.size() != p.vars)
                throw Error(Errc::ShapeError, "polynomial term exponent count differs from vars");
            term.coeff = parseMatrixEntry(te.at("coeff"));
            if (!term.coeff.isSquare())
                throw Error(Errc::ShapeError, "polynomial coefficients must be square");
            p.terms.push_back(std::move(term));
        }
        if (p.terms.empty()) throw Error(Errc::ParseError, "polynomial with no terms");
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<MatPoly> loadPolynomialFile(const std::string& path) {
    return parsePolynomials(readTextFile(path));
}

}  // namespace distvar
