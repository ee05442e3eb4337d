// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#ifndef DISTVAR_IO_HPP
#define DISTVAR_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "distvar/dilation.hpp"
#include "distvar/matrix.hpp"
#include "distvar/pencilvariety.hpp"
#include "distvar/symdisc.hpp"

namespace distvar {

/// Named matrices, the on-disk form of every operator input. Schema per
/// entry: {"name": str, "rows": int, "cols": int, "data": [[[re, im], ...], ...]}.
using NamedMatrices = std::vector<std::pair<std::string, ComplexMatrix>>;

NamedMatrices parseMatrixCollection(const std::string& jsonText);
NamedMatrices loadMatrixFile(const std::string& path);
std::string matrixCollectionToJson(const NamedMatrices& matrices);
void saveMatrixFile(const std::string& path, const NamedMatrices& matrices);

/// Sigma files are matrix collections named P1..Pn, U1..Un.
SigmaData sigmaFromMatrices(const NamedMatrices& matrices);
NamedMatrices sigmaToMatrices(const SigmaData& s);

/// Contraction-tuple files are matrix collections named T1..Tn.
std::vector<ComplexMatrix> tupleFromMatrices(const NamedMatrices& matrices);

/// F-pencil files are matrix collections named F1..F{n-1}.
FPencilData fpencilFromMatrices(const NamedMatrices& matrices);

/// CSV with columns exactly
/// z_re,z_im,z1_re,z1_im,...,zn_re,zn_im,class,residual.
std::string cloudToCsv(const VarietyPointCloud& cloud);
VarietyPointCloud cloudFromCsv(const std::string& csvText);

std::string cloudToJson(const VarietyPointCloud& cloud);
VarietyPointCloud cloudFromJson(const std::string& jsonText);

/// Reads a cloud from CSV or JSON, detected by leading character.
VarietyPointCloud loadCloudFile(const std::string& path);

/// Polynomial files: [{"name": str, "vars": int, "terms":
/// [{"exponents": [..], "coeff": {"rows", "cols", "data"}}]}].
std::vector<MatPoly> parsePolynomials(const std::string& jsonText);
std::vector<MatPoly> loadPolynomialFile(const std::string& path);

std::string readTextFile(const std::string& path);
void writeTextFile(const std::string& path, const std::string& text);

}  // namespace distvar

#endif
