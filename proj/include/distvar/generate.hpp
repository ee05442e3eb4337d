// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#ifndef DISTVAR_GENERATE_HPP
#define DISTVAR_GENERATE_HPP

#include <cstdint>
#include <string>

#include "distvar/pencilvariety.hpp"

namespace distvar {

enum class SigmaKind { Diagonal, Swaplike, ConjugatedDiagonal };

SigmaKind sigmaKindFromString(const std::string& s);

/// Seeded instance families of valid pencil data.
///  - diagonal: unimodular diagonal unitaries with product I, a random total
///    partition for the projections;
///  - swaplike (n = 2): U1 = U, P1 = P, U2 = U*, P2 = U P^perp U* for a
///    random unitary U and projection P;
///  - conjugated-diagonal: a diagonal instance conjugated by a random unitary.
SigmaData generateSigma(SigmaKind kind, std::size_t n, std::size_t d, std::uint64_t seed);

/// Haar-ish random unitary (QR of a complex Gaussian matrix).
ComplexMatrix randomUnitary(std::size_t d, std::uint64_t seed);

/// The 2x2 swap fixture: U1 = U2 = swap, P1 = P2 = diag(1, 0). Its variety is
/// the diagonal {(w, w) : w^2 = z}.
SigmaData swapSigmaFixture();

}  // namespace distvar

#endif
