#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "subfvm/cv_mesh.hpp"
#include "subfvm/periodic.hpp"
#include "subfvm/regions.hpp"

namespace subfvm {

/// Material data for one region. gamma = 1 recovers classical diffusion.
struct RegionMedium {
    double qx = 1.0;
    double qy = 1.0;
    double gamma = 1.0;
    double capacity = 1.0;  // multiplier on the storage (mass) term
};

enum class InterfaceMode { RlFlux, ClassicalFlux };

struct MediumSpec {
    RegionMedium region[2];  // index = RegionTags::tri_region value (0 = matrix, 1 = inclusion)
    InterfaceMode interface_mode = InterfaceMode::RlFlux;
};

/// One fractionally-tagged part of the semi-discrete system: the stepper
/// applies the order-(1-gamma) memory operator to K and this block's
/// correction weights to its mass share.
struct FracBlock {
    double gamma = 1.0;
    Eigen::SparseMatrix<double> K;  // full-node indexing, row = control volume
    Eigen::VectorXd mass_share;     // part of the lumped mass assembled in this block
};

struct SparseSystem {
    int n_nodes = 0;
    Eigen::VectorXd mass;  // total lumped (capacity-weighted) mass
    std::vector<FracBlock> blocks;

    Eigen::SparseMatrix<double> total_stiffness() const;
};

using FluxFunction = std::function<void(double x, double y, double t, double& psi1, double& psi2)>;

Eigen::VectorXd lumped_mass(const CvMesh& cv);

/// Single-medium stiffness matrix via the midpoint line-integral rule.
Eigen::SparseMatrix<double> stiffness(const CvMesh& cv, const RegionTags& tags,
                                      const MediumSpec& medium);

/// Prescribed-flux boundary vector at time t (Neumann data already carries the
/// memory operator).
Eigen::VectorXd boundary_flux_vector(const CvMesh& cv, const FluxFunction& psi, double t);

/// Region-split system for the two-phase medium; interface nodes hold the
/// single shared unknown. With InterfaceMode::ClassicalFlux the interface rows
/// are assembled into a gamma = 1 block instead of their regions' blocks.
SparseSystem couple_binary(const CvMesh& cv, const RegionTags& tags, const MediumSpec& medium);

/// Single-medium system (one block); convenience for the square-domain tests.
SparseSystem single_medium(const CvMesh& cv, const RegionTags& tags, const MediumSpec& medium);

/// Periodically reduced system: slave unknowns eliminated, slave rows folded
/// into master rows, constant jumps carried as an affine offset vector.
struct ReducedSystem {
    int n_full = 0;
    int n_reduced = 0;
    std::vector<int> full_to_red;
    Eigen::VectorXd offsets;    // u_full = P w + offsets
    Eigen::VectorXd mass;       // reduced global mass
    Eigen::VectorXd full_mass;  // unreduced lumped mass (projection weights)

    struct Block {
        double gamma = 1.0;
        Eigen::SparseMatrix<double> K;       // reduced: P^T K P
        Eigen::SparseMatrix<double> K_full;  // unreduced stiffness (flux at the raw state)
        Eigen::VectorXd mass_share;
        Eigen::VectorXd k_offset;  // P^T K g, the constant quasi-periodic load
    };
    std::vector<Block> blocks;

    Eigen::VectorXd reduce(const Eigen::VectorXd& full) const;      // pick master values
    /// Mass-weighted projection onto the constrained space. Agrees with
    /// reduce() whenever the field already satisfies the constraints; for an
    /// incompatible field (e.g. a uniform start against a unit jump) it is the
    /// unique choice that preserves the total mass.
    Eigen::VectorXd project(const Eigen::VectorXd& full) const;
    Eigen::VectorXd reduce_load(const Eigen::VectorXd& full) const; // P^T f
    Eigen::VectorXd expand(const Eigen::VectorXd& reduced) const;   // P w + g
};

ReducedSystem apply_quasi_periodic(const SparseSystem& sys,
                                   const std::vector<PeriodicMap>& maps);

}  // namespace subfvm
