#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcts {

enum class ErrorKind {
    InvalidArgument,
    MissingValues,
    DegenerateSeries,
    LagTooLarge,
    SeriesTooShort,
    NumericalFailure,
    FitDegenerate,
    MissingClass,
    DegenerateColumn,
    SpecialValuePresent,
    TooFewPatients,
    UnknownFeature,
    ParseError,
    MissingFile,
    DuplicateId,
    IoError,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MissingValues: return "MissingValues";
    case ErrorKind::DegenerateSeries: return "DegenerateSeries";
    case ErrorKind::LagTooLarge: return "LagTooLarge";
    case ErrorKind::SeriesTooShort: return "SeriesTooShort";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::FitDegenerate: return "FitDegenerate";
    case ErrorKind::MissingClass: return "MissingClass";
    case ErrorKind::DegenerateColumn: return "DegenerateColumn";
    case ErrorKind::SpecialValuePresent: return "SpecialValuePresent";
    case ErrorKind::TooFewPatients: return "TooFewPatients";
    case ErrorKind::UnknownFeature: return "UnknownFeature";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library. The kind is the machine-readable part;
/// the message is meant for the person running the tool.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    // Degenerate inputs map onto FeatureValue::Degenerate when a feature is
    // evaluated through the catalog.
    bool is_degenerate() const noexcept {
        return kind_ == ErrorKind::DegenerateSeries || kind_ == ErrorKind::FitDegenerate ||
               kind_ == ErrorKind::DegenerateColumn;
    }

private:
    ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) throw Error(kind, message);
}

} // namespace hcts
