#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ambit/config.hpp"
#include "ambit/simulate.hpp"

namespace ambit {

/// Writes realizations as flat binary (little-endian 64-bit floats,
/// row-major t-then-x, realizations concatenated in index order) plus a
/// JSON sidecar with dimensions, spacings, seed and the basis/boundary
/// parameters. add() may be called out of order and concurrently for
/// distinct realizations; each seeks to its own slot.
class FieldWriter {
public:
    FieldWriter(const std::string& dir, const RunConfig& config);
    ~FieldWriter();

    void add(const FieldRealization& field);
    /// Flush data and write the sidecar; returns {bin, sidecar} paths.
    std::vector<std::string> finalize();

private:
    struct Impl;
    Impl* impl_;
};

class FieldReader {
public:
    explicit FieldReader(const std::string& dir);
    ~FieldReader();

    int realizations() const;
    int nx() const;
    int nt() const;
    double dx() const;
    double dt() const;

    FieldRealization read(int realization) const;
    std::vector<FieldRealization> read_all() const;

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace ambit
