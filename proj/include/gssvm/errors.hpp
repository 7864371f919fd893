#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gssvm {

/// Base of all toolkit errors. `name()` is the stable identifier surfaced in
/// CLI diagnostics ("MalformedLine", "OneClassOnly", ...).
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Unreadable or malformed input: data files, model files, split requests.
class DataError : public Error {
public:
    using Error::Error;
};

/// Failures while training or transforming a model.
class TrainError : public Error {
public:
    using Error::Error;
};

}  // namespace gssvm
