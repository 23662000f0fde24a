#include "tensvd/codec.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <unordered_set>

namespace tensvd {

namespace {

constexpr char kTsvdMagic[4] = {'T', 'S', 'V', 'D'};
constexpr char kTuckerMagic[4] = {'T', 'H', 'S', 'V'};
constexpr std::uint16_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "the fixed-width encoders below assume a little-endian host");

class Writer {
public:
    explicit Writer(std::size_t reserve) { bytes_.reserve(reserve); }

    template <typename T>
    void put(T v) {
        static_assert(std::is_trivially_copyable_v<T>);
        const std::size_t at = bytes_.size();
        bytes_.resize(at + sizeof(T));
        std::memcpy(bytes_.data() + at, &v, sizeof(T));
    }

    void put_magic(const char (&magic)[4]) {
        bytes_.insert(bytes_.end(), magic, magic + 4);
    }

    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    template <typename T>
    T get(const char* field) {
        static_assert(std::is_trivially_copyable_v<T>);
        need(sizeof(T), field);
        T v;
        std::memcpy(&v, bytes_.data() + at_, sizeof(T));
        at_ += sizeof(T);
        return v;
    }

    void get_magic(char (&magic)[4]) {
        need(4, "magic");
        std::memcpy(magic, bytes_.data() + at_, 4);
        at_ += 4;
    }

    void need(std::size_t n, const char* field) {
        if (at_ + n > bytes_.size())
            throw CodecError(CodecErrorKind::Truncated,
                             "truncated stream at " + std::string(field) + ": expected at least " +
                                 std::to_string(at_ + n) + " bytes, have " +
                                 std::to_string(bytes_.size()));
    }

    std::size_t offset() const { return at_; }
    std::size_t remaining() const { return bytes_.size() - at_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t at_ = 0;
};

void put_shape(Writer& w, const Shape& dims) {
    w.put<std::uint32_t>(static_cast<std::uint32_t>(dims.size()));
    for (std::int64_t d : dims) w.put<std::uint32_t>(static_cast<std::uint32_t>(d));
}

Shape get_shape(Reader& r, const char* field) {
    const std::uint32_t order = r.get<std::uint32_t>(field);
    if (order == 0)
        throw CodecError(CodecErrorKind::BadField, std::string(field) + ": order must be >= 1");
    Shape dims;
    dims.reserve(order);
    for (std::uint32_t i = 0; i < order; ++i) {
        const std::uint32_t d = r.get<std::uint32_t>(field);
        if (d == 0)
            throw CodecError(CodecErrorKind::BadField,
                             std::string(field) + ": extents must be positive");
        dims.push_back(static_cast<std::int64_t>(d));
    }
    return dims;
}

void put_matrix_f32(Writer& w, const Matrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            w.put<float>(static_cast<float>(m(r, c)));
}

Matrix get_matrix_f32(Reader& r, Eigen::Index rows, Eigen::Index cols, const char* field) {
    Matrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index row = 0; row < rows; ++row)
            m(row, c) = static_cast<double>(r.get<float>(field));
    return m;
}

void check_version(std::uint16_t version) {
    if (version != kVersion)
        throw CodecError(CodecErrorKind::UnsupportedVersion,
                         "unsupported container version " + std::to_string(version) +
                             " (this build reads version " + std::to_string(kVersion) + ")");
}

} // namespace

std::vector<std::uint8_t> encode(const CompressedTensor& c) {
    const std::size_t k = c.sparse_core.values.size();
    std::size_t factor_bytes = 0;
    for (const Matrix& u : c.factors)
        factor_bytes += static_cast<std::size_t>(u.size()) * sizeof(float);

    Writer w(64 + 4 * (c.plan.original_dims.size() + c.plan.reshaped_dims.size()) +
             factor_bytes + 12 * k);
    w.put_magic(kTsvdMagic);
    w.put<std::uint16_t>(kVersion);
    put_shape(w, c.plan.original_dims);
    put_shape(w, c.plan.reshaped_dims);
    for (const Matrix& u : c.factors) put_matrix_f32(w, u);
    w.put<std::uint64_t>(static_cast<std::uint64_t>(k));
    for (double v : c.sparse_core.values) w.put<float>(static_cast<float>(v));
    for (std::uint64_t p : c.sparse_core.positions) w.put<std::uint64_t>(p);
    w.put<double>(c.total_energy);
    return w.take();
}

CompressedTensor decode(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    char magic[4];
    r.get_magic(magic);
    if (std::memcmp(magic, kTsvdMagic, 4) != 0)
        throw CodecError(CodecErrorKind::BadMagic, "bad magic: not a .tsvd container");
    check_version(r.get<std::uint16_t>("version"));

    CompressedTensor c;
    c.plan.original_dims = get_shape(r, "original dims");
    c.plan.reshaped_dims = get_shape(r, "reshaped dims");
    if (element_count(c.plan.original_dims) != element_count(c.plan.reshaped_dims))
        throw CodecError(CodecErrorKind::ElementCountMismatch,
                         "original and reshaped dims disagree on the element count");

    c.factors.reserve(c.plan.reshaped_dims.size());
    for (std::int64_t j : c.plan.reshaped_dims)
        c.factors.push_back(get_matrix_f32(r, j, j, "factor payload"));

    const std::uint64_t k = r.get<std::uint64_t>("entry count");
    const std::uint64_t core_size =
        static_cast<std::uint64_t>(element_count(c.plan.reshaped_dims));
    if (k > core_size)
        throw CodecError(CodecErrorKind::BadField,
                         "entry count exceeds the core size");
    c.sparse_core.values.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i)
        c.sparse_core.values.push_back(static_cast<double>(r.get<float>("core values")));
    c.sparse_core.positions.reserve(k);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(k * 2);
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t pos = r.get<std::uint64_t>("core positions");
        if (pos >= core_size)
            throw CodecError(CodecErrorKind::PositionOutOfRange,
                             "core position " + std::to_string(pos) + " out of range (core has " +
                                 std::to_string(core_size) + " elements)");
        if (!seen.insert(pos).second)
            throw CodecError(CodecErrorKind::DuplicatePosition,
                             "duplicate core position " + std::to_string(pos));
        c.sparse_core.positions.push_back(pos);
    }
    c.total_energy = r.get<double>("total energy");
    c.stored_count = tensvd_storage_cost(c.plan, static_cast<std::int64_t>(k));
    return c;
}

std::vector<std::uint8_t> encode_tucker(const TuckerFactors& f, const Shape& original_dims) {
    if (f.factors.size() != original_dims.size())
        throw ShapeError("factor count does not match the tensor order");
    Writer w(64);
    w.put_magic(kTuckerMagic);
    w.put<std::uint16_t>(kVersion);
    put_shape(w, original_dims);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(f.core.order()));
    for (std::int64_t rk : f.core.dims()) w.put<std::uint32_t>(static_cast<std::uint32_t>(rk));
    for (const Matrix& u : f.factors) put_matrix_f32(w, u);
    for (std::int64_t i = 0; i < f.core.size(); ++i)
        w.put<float>(static_cast<float>(f.core[i]));
    return w.take();
}

TuckerFile decode_tucker(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    char magic[4];
    r.get_magic(magic);
    if (std::memcmp(magic, kTuckerMagic, 4) != 0)
        throw CodecError(CodecErrorKind::BadMagic, "bad magic: not a Tucker baseline container");
    check_version(r.get<std::uint16_t>("version"));

    TuckerFile file;
    file.original_dims = get_shape(r, "dims");
    const std::uint32_t order = r.get<std::uint32_t>("rank count");
    if (order != file.original_dims.size())
        throw CodecError(CodecErrorKind::BadField, "rank count does not match the order");
    Shape ranks;
    for (std::uint32_t i = 0; i < order; ++i) {
        const std::uint32_t rk = r.get<std::uint32_t>("ranks");
        if (rk == 0 || rk > static_cast<std::uint64_t>(file.original_dims[i]))
            throw CodecError(CodecErrorKind::BadField, "rank out of range");
        ranks.push_back(static_cast<std::int64_t>(rk));
    }
    for (std::uint32_t i = 0; i < order; ++i)
        file.factors.factors.push_back(
            get_matrix_f32(r, file.original_dims[i], ranks[i], "factor payload"));
    DenseTensor core(ranks);
    for (std::int64_t i = 0; i < core.size(); ++i)
        core[i] = static_cast<double>(r.get<float>("core payload"));
    file.factors.core = std::move(core);
    return file;
}

ContainerKind sniff_container(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4)
        throw CodecError(CodecErrorKind::Truncated, "stream shorter than the 4-byte magic");
    if (std::memcmp(bytes.data(), kTsvdMagic, 4) == 0) return ContainerKind::TenSvd;
    if (std::memcmp(bytes.data(), kTuckerMagic, 4) == 0) return ContainerKind::Tucker;
    throw CodecError(CodecErrorKind::BadMagic, "unrecognized container magic");
}

void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + path);
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoError("cannot open " + path);
    const std::streamsize size = in.tellg();
    in.seekg(0);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
    in.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!in) throw IoError("read failed for " + path);
    return bytes;
}

} // namespace tensvd
