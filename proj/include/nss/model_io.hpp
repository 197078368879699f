#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "nss/classifiers.hpp"
#include "nss/dataio.hpp"

namespace nss {

enum class ClassifierKind { Nss, Lda, Centroid };

ClassifierKind parse_classifier_kind(const std::string& name);
std::string classifier_kind_name(ClassifierKind kind);

// A trained classifier together with the preprocessing fit on its training
// data, so prediction on raw inputs reproduces the training-time view.
struct Pipeline {
    ClassifierKind kind = ClassifierKind::Nss;
    ScalerParams scaler;
    std::optional<PcaReducer> pca;
    std::optional<NssModel> nss;
    std::optional<LdaModel> lda;
    std::optional<CentroidModel> centroid;
    int input_dim = 0;
    int chosen_dim = 0;  // NSS intrinsic dimension actually used

    Matrix transform(const Matrix& rows) const;
    Vector transform(const Vector& x) const;
    int predict(const Vector& x) const;
    std::vector<int> predict_all(const Matrix& rows) const;
    // Per-class NSS residuals of a raw input; throws WrongMode otherwise.
    Vector residuals(const Vector& x) const;
};

// Versioned flat text format, 17-significant-digit values, lossless
// round-trips. Readers reject unknown versions and classifier tags.
void save_model(std::ostream& out, const Pipeline& pipeline);
void save_model_file(const std::string& path, const Pipeline& pipeline);
Pipeline load_model(std::istream& in);
Pipeline load_model_file(const std::string& path);

}  // namespace nss
