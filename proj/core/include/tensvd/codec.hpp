#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tensvd/hosvd.hpp"
#include "tensvd/tensvd.hpp"

namespace tensvd {

enum class CodecErrorKind {
    BadMagic,
    UnsupportedVersion,
    Truncated,
    PositionOutOfRange,
    DuplicatePosition,
    ElementCountMismatch,
    BadField,
};

class CodecError : public Error {
public:
    CodecError(CodecErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
    CodecErrorKind kind() const noexcept { return kind_; }

private:
    CodecErrorKind kind_;
};

// .tsvd container, little-endian throughout:
//   "TSVD" | version u16 | N u32 | original dims u32*N | M u32 |
//   reshaped dims u32*M | factor matrices f32 column-major (J_m x J_m each) |
//   K u64 | K values f32 | K positions u64 | total_energy f64
// Factor and value floats are narrowed to 32 bits; everything else round
// trips bit-exactly.
std::vector<std::uint8_t> encode(const CompressedTensor& c);
CompressedTensor decode(std::span<const std::uint8_t> bytes);

// Sibling container for the truncated-HOSVD baseline ("THSV" magic):
//   "THSV" | version u16 | N u32 | dims u32*N | ranks u32*N |
//   factors f32 (I_n x r_n each) | core f32 (prod r_n values)
struct TuckerFile {
    Shape original_dims;
    TuckerFactors factors;
};

std::vector<std::uint8_t> encode_tucker(const TuckerFactors& f, const Shape& original_dims);
TuckerFile decode_tucker(std::span<const std::uint8_t> bytes);

enum class ContainerKind { TenSvd, Tucker };

// Inspect the magic without decoding. Throws CodecError on anything else.
ContainerKind sniff_container(std::span<const std::uint8_t> bytes);

// Whole-file helpers.
void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_bytes(const std::string& path);

} // namespace tensvd
