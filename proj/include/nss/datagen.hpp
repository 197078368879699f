#pragma once

#include <cstdint>
#include <vector>

#include "nss/dataset.hpp"
#include "nss/rng.hpp"

namespace nss {

// Mixture of K Gaussians with known parameters; can sample and evaluate its
// class densities, so Bayes rules are available downstream.
struct GaussianMixtureSpec {
    std::vector<Vector> means;
    std::vector<Matrix> covariances;
    std::vector<double> priors;

    int num_classes() const { return static_cast<int>(means.size()); }
    int dim() const { return means.empty() ? 0 : static_cast<int>(means.front().size()); }
    void validate() const;
};

// The 3-class mixture in R^3 used for the simulated Gaussian benchmark:
// means (1,2,3), (-1,-2,-3), (-1,2,-3), fixed covariances, equal priors.
GaussianMixtureSpec paper_gaussian_spec();

// Balanced by priors (exact n/K per class for equal priors and K | n,
// largest-remainder rounding otherwise). Class-k samples are mu_k + L_k z,
// L_k the Cholesky factor of Sigma_k.
LabeledDataset sample_gaussian_mixture(const GaussianMixtureSpec& spec, int n, std::uint64_t seed);

enum class NoiseKind {
    Ambient,     // isotropic Gaussian added in all D coordinates
    Orthogonal,  // Gaussian only on the subspace's orthogonal complement
};

// K affine subspaces of shared intrinsic dimension d. On-subspace mass is
// uniform in the d-ball of radius M around the center; off-subspace mass is
// Gaussian, either ambient (sigma) or orthogonal-only with coordinate
// variance 1/(2*alpha). The orthogonal mode has closed-form class densities
// proportional to exp(-alpha * t), t the squared distance to the subspace.
struct SubspaceFamilySpec {
    int num_classes = 0;
    int ambient_dim = 0;
    int intrinsic_dim = 0;
    double ball_radius = 1.0;  // M
    NoiseKind noise = NoiseKind::Ambient;
    double noise_sigma = 0.0;       // ambient mode
    double orthogonal_alpha = 0.0;  // orthogonal mode
    std::vector<Vector> centers;    // u_k
    std::vector<Matrix> bases;      // D x d orthonormal
    double min_angle = 0.0;         // enforced pairwise largest principal angle

    bool orthogonal_mode() const { return noise == NoiseKind::Orthogonal; }
    void validate() const;
};

// Largest principal angle between the spans of two orthonormal bases
// (acos of the smallest singular value of B1^T B2).
double largest_principal_angle(const Matrix& b1, const Matrix& b2);

double ball_volume(int d, double radius);

// Draws bases by orthonormalizing Gaussian matrices, rejecting draws whose
// pairwise largest principal angles fall below min_angle. Centers at the
// origin. Throws AngleInfeasible after max_attempts rejections.
SubspaceFamilySpec random_subspace_spec(int K, int D, int d, double min_angle, double M,
                                        NoiseKind kind, double noise_or_alpha, std::uint64_t seed,
                                        int max_attempts = 10000);

// The simulated-subspace benchmark family: 3 planes in R^50 bounded in the
// unit disk, pairwise angles at least pi/8, ambient noise sigma=0.05.
SubspaceFamilySpec paper_subspace_spec(std::uint64_t seed);

LabeledDataset sample_subspace_family(const SubspaceFamilySpec& spec, int n, std::uint64_t seed);

// Rows for a single class (1-based), same per-class stream the full sampler
// uses.
Matrix sample_subspace_class(const SubspaceFamilySpec& spec, int k, int n, std::uint64_t seed);

// Closed-form class density in orthogonal mode:
//   (1/Vol_d(M)) * (alpha/pi)^((D-d)/2) * exp(-alpha * t)
// and 0 outside the on-subspace ball. Throws WrongMode in ambient mode.
double class_density(const SubspaceFamilySpec& spec, int k, const Vector& x);

// log of class_density, -inf outside the support; useful when exp underflows.
double log_class_density(const SubspaceFamilySpec& spec, int k, const Vector& x);

}  // namespace nss
