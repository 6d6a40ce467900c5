// SPDX-License-Identifier: Apache-2.0
#include "udep/payload.hpp"

#include <cmath>
#include <cstring>

#include "udep/errors.hpp"

namespace udep {

namespace {

constexpr std::uint8_t kMagic[4] = {0x55, 0x44, 0x45, 0x50};  // "UDEP"
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kHeaderSize = 16;
constexpr std::size_t kChecksumPos = 7;

constexpr std::uint8_t kFlagQuantized = 0x01;
constexpr std::uint8_t kFlagDetPresent = 0x02;
constexpr std::uint8_t kFlagDetNegative = 0x04;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<std::uint8_t>((bits >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  void need(std::size_t k) const {
    if (pos_ + k > bytes_.size())
      throw FormatError(FormatCode::Truncated, "payload truncated");
  }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}
  void put(std::uint32_t value, int bits) {
    for (int i = 0; i < bits; ++i) {
      if (fill_ == 0) out_.push_back(0);
      if ((value >> i) & 1u) out_.back() |= static_cast<std::uint8_t>(1u << fill_);
      fill_ = (fill_ + 1) % 8;
    }
  }

 private:
  std::vector<std::uint8_t>& out_;
  int fill_ = 0;
};

class BitReader {
 public:
  BitReader(Reader& r, std::size_t total_bits)
      : r_(r), bits_left_(total_bits) {}
  std::uint32_t get(int bits) {
    std::uint32_t v = 0;
    for (int i = 0; i < bits; ++i) {
      if (fill_ == 0) {
        cur_ = r_.u8();
        fill_ = 8;
      }
      if (cur_ & 1u) v |= 1u << i;
      cur_ >>= 1;
      --fill_;
    }
    return v;
  }

 private:
  Reader& r_;
  std::size_t bits_left_;
  std::uint8_t cur_ = 0;
  int fill_ = 0;
};

std::uint8_t header_checksum(const std::vector<std::uint8_t>& h) {
  std::uint8_t x = 0;
  for (std::size_t i = 0; i < kHeaderSize; ++i)
    if (i != kChecksumPos) x ^= h[i];
  return x;
}

}  // namespace

std::vector<std::uint8_t> serialize(const EncodedPayload& p) {
  const std::size_t d = dims(p.variant, p.n);
  if (p.variant.kind == VariantKind::Rotation) {
    if (!p.det_sign || (*p.det_sign != 1 && *p.det_sign != -1))
      throw PreconditionError("serialize: Rotation payload needs det_sign +1/-1");
  } else if (p.det_sign) {
    throw PreconditionError("serialize: det_sign only valid for Rotation variant");
  }
  if (!p.quantized) {
    if (p.raw.size() != d) throw ShapeError("serialize: raw coordinate length mismatch");
  } else {
    std::size_t total = 0;
    for (const auto& seg : p.segments) {
      if (seg.spec.bits < 1 || seg.spec.bits > 16)
        throw PreconditionError("serialize: segment bits out of range");
      const std::uint32_t levels = 1u << seg.spec.bits;
      for (std::uint32_t idx : seg.indices)
        if (idx >= levels)
          throw FormatError(FormatCode::IndexOverflow, "serialize: index exceeds 2^bits - 1");
      total += seg.indices.size();
    }
    if (total != d || p.segments.empty() || p.segments.size() > 255)
      throw ShapeError("serialize: segment lengths must sum to dims");
  }

  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(p.variant.kind));
  std::uint8_t flags = 0;
  if (p.quantized) flags |= kFlagQuantized;
  if (p.det_sign) {
    flags |= kFlagDetPresent;
    if (*p.det_sign < 0) flags |= kFlagDetNegative;
  }
  out.push_back(flags);
  out.push_back(0);  // checksum, filled below
  put_u32(out, static_cast<std::uint32_t>(p.n));
  put_u32(out, static_cast<std::uint32_t>(d));
  out[kChecksumPos] = header_checksum(out);

  if (p.variant.kind == VariantKind::BlockDiagonal) {
    put_u32(out, static_cast<std::uint32_t>(p.variant.blocks.size()));
    for (std::size_t b : p.variant.blocks) put_u32(out, static_cast<std::uint32_t>(b));
  }

  if (!p.quantized) {
    for (double v : p.raw) put_f64(out, v);
  } else {
    out.push_back(static_cast<std::uint8_t>(p.segments.size()));
    for (const auto& seg : p.segments) {
      out.push_back(static_cast<std::uint8_t>(seg.spec.bits));
      put_f64(out, seg.spec.lo);
      put_f64(out, seg.spec.hi);
      put_u32(out, static_cast<std::uint32_t>(seg.indices.size()));
    }
    BitWriter bw(out);
    for (const auto& seg : p.segments)
      for (std::uint32_t idx : seg.indices) bw.put(idx, seg.spec.bits);
  }
  return out;
}

EncodedPayload deserialize(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeaderSize)
    throw FormatError(FormatCode::Truncated, "payload shorter than header");
  for (int i = 0; i < 4; ++i)
    if (bytes[i] != kMagic[i]) throw FormatError(FormatCode::BadMagic, "bad magic");
  if (bytes[4] != kVersion)
    throw FormatError(FormatCode::UnsupportedVersion, "unsupported version");
  if (header_checksum(bytes) != bytes[kChecksumPos])
    throw FormatError(FormatCode::BadHeader, "header checksum mismatch");

  const std::uint8_t variant_byte = bytes[5];
  if (variant_byte > 4) throw FormatError(FormatCode::BadHeader, "invalid variant");
  const std::uint8_t flags = bytes[6];
  if (flags & ~(kFlagQuantized | kFlagDetPresent | kFlagDetNegative))
    throw FormatError(FormatCode::BadHeader, "reserved flag bits set");

  Reader r(bytes);
  for (std::size_t i = 0; i < 8; ++i) r.u8();
  const std::uint32_t n = r.u32();
  const std::uint32_t stored_dims = r.u32();
  if (n < 1 || n > (1u << 20)) throw FormatError(FormatCode::BadHeader, "invalid size N");

  EncodedPayload p;
  p.n = n;
  p.variant.kind = static_cast<VariantKind>(variant_byte);
  if (p.variant.kind == VariantKind::BlockDiagonal) {
    const std::uint32_t count = r.u32();
    if (count == 0 || count > n) throw FormatError(FormatCode::BadHeader, "invalid block count");
    for (std::uint32_t i = 0; i < count; ++i) p.variant.blocks.push_back(r.u32());
  }
  std::size_t d;
  try {
    d = dims(p.variant, p.n);
  } catch (const StructureError&) {
    throw FormatError(FormatCode::BadHeader, "inconsistent block table");
  }
  if (d != stored_dims)
    throw FormatError(FormatCode::BadHeader, "dims field does not match variant");

  const bool det_present = flags & kFlagDetPresent;
  if (det_present != (p.variant.kind == VariantKind::Rotation))
    throw FormatError(FormatCode::BadHeader, "det_sign flag inconsistent with variant");
  if (!det_present && (flags & kFlagDetNegative))
    throw FormatError(FormatCode::BadHeader, "det sign bit without det flag");
  if (det_present) p.det_sign = (flags & kFlagDetNegative) ? -1 : 1;

  p.quantized = flags & kFlagQuantized;
  if (!p.quantized) {
    p.raw.reserve(d);
    for (std::size_t i = 0; i < d; ++i) p.raw.push_back(r.f64());
  } else {
    const std::uint8_t seg_count = r.u8();
    if (seg_count == 0) throw FormatError(FormatCode::BadSegment, "zero segments");
    std::size_t total = 0;
    std::size_t total_bits = 0;
    std::vector<std::size_t> lengths;
    for (std::uint8_t s = 0; s < seg_count; ++s) {
      EncodedPayload::Segment seg;
      seg.spec.bits = r.u8();
      seg.spec.lo = r.f64();
      seg.spec.hi = r.f64();
      const std::uint32_t len = r.u32();
      if (seg.spec.bits < 1 || seg.spec.bits > 16 || !(seg.spec.lo < seg.spec.hi) ||
          !std::isfinite(seg.spec.lo) || !std::isfinite(seg.spec.hi))
        throw FormatError(FormatCode::BadSegment, "invalid segment spec");
      total += len;
      total_bits += static_cast<std::size_t>(len) * seg.spec.bits;
      lengths.push_back(len);
      p.segments.push_back(std::move(seg));
    }
    if (total != d)
      throw FormatError(FormatCode::BadSegment, "segment lengths do not sum to dims");
    BitReader br(r, total_bits);
    for (std::size_t s = 0; s < p.segments.size(); ++s) {
      p.segments[s].indices.reserve(lengths[s]);
      for (std::size_t i = 0; i < lengths[s]; ++i)
        p.segments[s].indices.push_back(br.get(p.segments[s].spec.bits));
    }
  }
  if (r.remaining() != 0)
    throw FormatError(FormatCode::TrailingData, "trailing bytes after payload");
  return p;
}

}  // namespace udep
