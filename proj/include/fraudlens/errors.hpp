#pragma once

#include <stdexcept>
#include <string>

namespace fraudlens {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownLabelError : public Error {
public:
    explicit UnknownLabelError(const std::string& name)
        : Error("unknown label: " + name), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class UnknownFraudTypeError : public Error {
public:
    explicit UnknownFraudTypeError(const std::string& name)
        : Error("unknown fraud type: " + name) {}
};

class NoJsonObjectError : public Error {
public:
    NoJsonObjectError() : Error("no JSON object found in text") {}
};

// Schema/consistency failures when turning raw JSON into an AnnotationRecord.
class ValidationError : public Error {
public:
    enum class Code {
        NotAnObject,
        MissingField,
        InvalidPresentValue,
        ReasonConsistency,
        MajorNotPositive,
        UnknownFraudType,
        UnknownLabel,
        EmptyStory,
    };

    ValidationError(Code code, const std::string& field, const std::string& message)
        : Error(message), code_(code), field_(field) {}

    Code code() const { return code_; }
    const std::string& field() const { return field_; }

private:
    Code code_;
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

class DatasetError : public Error {
public:
    using Error::Error;
};

class PoolExhaustedError : public Error {
public:
    PoolExhaustedError() : Error("all provider keys are disabled") {}
};

class EmptyCountsError : public Error {
public:
    EmptyCountsError() : Error("confusion counts are empty") {}
};

class ZeroBaseRateError : public Error {
public:
    ZeroBaseRateError() : Error("base rate is zero; relative reduction undefined") {}
};

class DatasetMismatchError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace fraudlens
