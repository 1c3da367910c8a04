#ifndef DCF_ERROR_HPP
#define DCF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dcf {

// Problems with input data: missing files, malformed lines, bad shapes.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Problems with a serialized model: bad magic, version, checksum.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dcf

#endif // DCF_ERROR_HPP
