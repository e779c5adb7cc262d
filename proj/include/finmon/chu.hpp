#pragma once

#include <functional>
#include <string>

#include "finmon/matrix.hpp"
#include "finmon/space.hpp"

namespace finmon {

// Pairing convention, fixed globally:
//   <x, phi> = x^T G phi          (x carrier column, phi counter column)
//   adjointness of a map (A, B):  A^T G_target = G_source B

// Chu object with no nondegeneracy requirement; input to the reflections.
struct RawPair {
    std::string name;
    Matrix pairing; // dim(carrier) x dim(counter)

    std::size_t dim() const { return pairing.rows(); }
    std::size_t dual_dim() const { return pairing.cols(); }
    Backend backend() const { return pairing.backend(); }
};

// Separated-extensional pair: square, invertible pairing.
class PairedSpace {
public:
    PairedSpace(std::string name, Matrix pairing); // throws DegeneratePairing

    const std::string& name() const { return name_; }
    std::size_t dim() const { return pairing_.rows(); }
    Backend backend() const { return pairing_.backend(); }
    const Matrix& pairing() const { return pairing_; }

    Scalar pair(const Matrix& x, const Matrix& phi) const;

    bool same_structure(const PairedSpace& o) const {
        return pairing_ == o.pairing_;
    }

    // The dualising pair (1, 1, [1]).
    static PairedSpace dualising(Backend backend);

private:
    std::string name_;
    Matrix pairing_;
};

// Adjoint-compatible linear map pair (f, f^T).
struct PairedMap {
    PairedSpace source, target;
    Matrix map;     // target.dim x source.dim, carrier coordinates
    Matrix adjoint; // source.dim x target.dim, dual coordinates
};

// Builds the map with its unique adjoint B = G_s^{-1} A^T G_t.
PairedMap make_paired_map(const PairedSpace& source, const PairedSpace& target, Matrix map);

// Validates a stored adjoint against the adjointness identity.
PairedMap make_paired_map(const PairedSpace& source, const PairedSpace& target,
                          Matrix map, Matrix adjoint);

PairedMap compose(const PairedMap& g, const PairedMap& f); // g ∘ f
PairedMap identity_map(const PairedSpace& a);
bool paired_maps_equal(const PairedMap& a, const PairedMap& b);

PairedSpace dual(const PairedSpace& a);
// [f, D]: dual(target) -> dual(source), given by (f^T, f).
PairedMap dual(const PairedMap& f);

// Internal hom [A, B]. Carrier: Hom(A,B) with coefficient matrices H
// (dim_B x dim_A, column-major vectorization) representing the map
// F = H G_A^T. Counter: A ⊗ B^T on the basis x_a ⊗ psi_b (column-major,
// index b*dim_A + a). Pairing c(H, x⊗psi) = <F x, psi>_B.
PairedSpace internal_hom(const PairedSpace& a, const PairedSpace& b);

// Flat index helpers for the fixed vectorization bases.
std::size_t hom_index(std::size_t i, std::size_t j, std::size_t dim_b); // H entry (i,j)
std::size_t tensor_index(std::size_t a, std::size_t b, std::size_t dim_a); // x_a ⊗ y_b

// Hom-coordinates of a concrete linear map F: A -> B (carrier coords).
Matrix hom_coords_of_map(const PairedSpace& a, const PairedSpace& b, const Matrix& f);
// Inverse: recover F from hom-coordinates.
Matrix map_of_hom_coords(const PairedSpace& a, const PairedSpace& b, const Matrix& h);

// Functor action [f, g]: [A', B] -> [A, B'] for f: A -> A', g: B -> B'.
PairedMap hom_map(const PairedMap& f, const PairedMap& g);

// A ⊗ B := ([A, B*])*, computed literally.
PairedSpace tensor(const PairedSpace& a, const PairedSpace& b);

// Carrier coordinates of the rank-one element x ⊗ y.
Matrix rank_one(const PairedSpace& a, const PairedSpace& b, const Matrix& x, const Matrix& y);

// Canonical morphism A -> dual(dual(A)).
PairedMap eta(const PairedSpace& a);

struct CurryIso {
    PairedMap forward;  // [A⊗B, C] -> [A, [B, C]]
    PairedMap backward; // inverse
};
CurryIso curry(const PairedSpace& a, const PairedSpace& b, const PairedSpace& c);

struct SeparationResult {
    RawPair pair;      // left-nondegenerate
    Matrix projection; // new_dim x old_dim, quotient by the left radical
};
SeparationResult separate(const RawPair& r);

struct ExtensionalizationResult {
    RawPair pair;           // right-nondegenerate
    Matrix dual_projection; // new_dual_dim x old_dual_dim
};
ExtensionalizationResult extensionalize(const RawPair& r);

struct ReflectionResult {
    PairedSpace pair;
    Matrix projection;
    Matrix dual_projection;
};
// separate then extensionalize; always lands in a valid PairedSpace.
ReflectionResult reflect(const RawPair& r);

// Free paired space on a finite carrier: (K^X, K^X, evaluation).
PairedSpace free_paired(const FiniteSpace& x, Backend backend = Backend::Exact);

// Unique linear extension of a point assignment, columns forced by
// extend(f)(delta_x) = f(x).
PairedMap free_extend(const SpacePtr& x, const PairedSpace& v,
                      const std::vector<Matrix>& values_per_point);

struct BilinearFactorization {
    bool bilinear = false;
    std::string failure; // set when !bilinear
    Matrix factor_map;   // map tensor(free X, free Y) -> V, when bilinear
};

// Checks bilinearity of fn on basis pairs extended with the supplied sample
// coefficients, then factors it through tensor(free_paired(X), free_paired(Y)).
BilinearFactorization factor_bilinear(
    const SpacePtr& x, const SpacePtr& y, const PairedSpace& v,
    const std::function<Matrix(const Matrix&, const Matrix&)>& fn,
    const std::vector<std::pair<Scalar, Scalar>>& sample_coeffs);

} // namespace finmon
