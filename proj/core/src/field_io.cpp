#include "ambit/field_io.hpp"

#include <bit>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>

#include "json_util.hpp"

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; big-endian hosts are not supported");

namespace ambit {

namespace fs = std::filesystem;

struct FieldWriter::Impl {
    std::string dir;
    RunConfig config;
    std::fstream bin;
    std::mutex mutex;
    std::size_t slot_bytes = 0;
    int written = 0;
    bool finalized = false;
};

FieldWriter::FieldWriter(const std::string& dir, const RunConfig& config) : impl_(new Impl) {
    impl_->dir = dir;
    impl_->config = config;
    fs::create_directories(dir);
    const std::string path = (fs::path(dir) / "fields.bin").string();
    impl_->bin.open(path, std::ios::binary | std::ios::out | std::ios::trunc);
    if (!impl_->bin) throw std::runtime_error("cannot open field output file: " + path);
    impl_->slot_bytes = static_cast<std::size_t>(config.lattice.nx) *
                        static_cast<std::size_t>(config.lattice.nt) * sizeof(double);
}

FieldWriter::~FieldWriter() { delete impl_; }

void FieldWriter::add(const FieldRealization& field) {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    if (field.index < 0 || field.index >= impl_->config.lattice.realizations)
        throw std::invalid_argument("field realization index outside configured count");
    impl_->bin.seekp(static_cast<std::streamoff>(impl_->slot_bytes) * field.index);
    impl_->bin.write(reinterpret_cast<const char*>(field.values.data()),
                     static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    ++impl_->written;
}

std::vector<std::string> FieldWriter::finalize() {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->bin.close();
    const RunConfig& cfg = impl_->config;
    nlohmann::json j;
    j["schema"] = 1;
    j["dtype"] = "float64-le";
    j["layout"] = "t-major";
    j["nx"] = cfg.lattice.nx;
    j["nt"] = cfg.lattice.nt;
    j["dx"] = cfg.lattice.dx;
    j["dt"] = cfg.lattice.dt;
    j["realizations"] = impl_->written;
    j["seed"] = cfg.lattice.seed;
    j["basis"] = detail::basis_json(cfg.basis);
    j["boundary"] = {{"tau2", cfg.tau2},
                     {"t_scal", cfg.t_scal},
                     {"T_scal", cfg.T_scal},
                     {"T", cfg.decorrelation_time()}};
    const std::string side = (fs::path(impl_->dir) / "fields.json").string();
    std::ofstream out(side, std::ios::binary);
    out << j.dump(2) << '\n';
    impl_->finalized = true;
    return {(fs::path(impl_->dir) / "fields.bin").string(), side};
}

struct FieldReader::Impl {
    nlohmann::json meta;
    std::string bin_path;
    std::size_t slot_doubles = 0;
};

FieldReader::FieldReader(const std::string& dir) : impl_(new Impl) {
    const std::string side = (fs::path(dir) / "fields.json").string();
    std::ifstream in(side);
    if (!in) throw std::runtime_error("cannot open field sidecar: " + side);
    in >> impl_->meta;
    impl_->bin_path = (fs::path(dir) / "fields.bin").string();
    impl_->slot_doubles = static_cast<std::size_t>(nx()) * static_cast<std::size_t>(nt());
}

FieldReader::~FieldReader() { delete impl_; }

int FieldReader::realizations() const { return impl_->meta.at("realizations").get<int>(); }
int FieldReader::nx() const { return impl_->meta.at("nx").get<int>(); }
int FieldReader::nt() const { return impl_->meta.at("nt").get<int>(); }
double FieldReader::dx() const { return impl_->meta.at("dx").get<double>(); }
double FieldReader::dt() const { return impl_->meta.at("dt").get<double>(); }

FieldRealization FieldReader::read(int realization) const {
    if (realization < 0 || realization >= realizations())
        throw std::out_of_range("realization index out of range");
    std::ifstream bin(impl_->bin_path, std::ios::binary);
    if (!bin) throw std::runtime_error("cannot open field data: " + impl_->bin_path);
    FieldRealization f;
    f.nx = nx();
    f.nt = nt();
    f.dx = dx();
    f.dt = dt();
    f.index = realization;
    f.values.resize(impl_->slot_doubles);
    bin.seekg(static_cast<std::streamoff>(impl_->slot_doubles * sizeof(double)) * realization);
    bin.read(reinterpret_cast<char*>(f.values.data()),
             static_cast<std::streamsize>(impl_->slot_doubles * sizeof(double)));
    if (!bin) throw std::runtime_error("short read from field data: " + impl_->bin_path);
    return f;
}

std::vector<FieldRealization> FieldReader::read_all() const {
    std::vector<FieldRealization> out;
    out.reserve(static_cast<std::size_t>(realizations()));
    for (int r = 0; r < realizations(); ++r) out.push_back(read(r));
    return out;
}

}  // namespace ambit
