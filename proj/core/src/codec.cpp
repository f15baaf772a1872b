#include "oransim/e2/codec.hpp"

#include <bit>
#include <cstring>

namespace oransim::e2 {

namespace {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) {
      out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
  }
  void u64(std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
      out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    if (s.size() > 0xffff) {
      throw CodecError(CodecErrorCode::field_overflow,
                       "string exceeds 65535 bytes");
    }
    u16(static_cast<std::uint16_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void list_len(std::size_t n) {
    if (n > 0xffff) {
      throw CodecError(CodecErrorCode::field_overflow,
                       "list exceeds 65535 elements");
    }
    u16(static_cast<std::uint16_t>(n));
  }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    const std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] << 8) |
                            bytes_[pos_ + 1];
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | bytes_[pos_ + i];
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | bytes_[pos_ + i];
    pos_ += 8;
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint16_t len = u16();
    need(len);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), len);
    pos_ += len;
    return s;
  }

  std::size_t consumed() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) {
    if (remaining() < n) {
      throw CodecError(CodecErrorCode::truncated, "payload truncated");
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void write_report(ByteWriter& w, const radio::MeasurementReport& r) {
  w.u32(r.ue);
  w.i64(r.t.ms);
  w.u32(r.serving);
  w.list_len(r.entries.size());
  for (const auto& [cell, rsrp] : r.entries) {
    w.u32(cell);
    w.f64(rsrp);
  }
  w.f64(r.sinr_db);
  w.u8(static_cast<std::uint8_t>(r.cqi));
}

radio::MeasurementReport read_report(ByteReader& r) {
  radio::MeasurementReport report;
  report.ue = r.u32();
  report.t = sim::SimTime{r.i64()};
  report.serving = r.u32();
  const std::uint16_t n = r.u16();
  report.entries.reserve(n);
  for (std::uint16_t i = 0; i < n; ++i) {
    const radio::CellId cell = r.u32();
    const double rsrp = r.f64();
    report.entries.emplace_back(cell, rsrp);
  }
  report.sinr_db = r.f64();
  report.cqi = r.u8();
  return report;
}

struct PayloadEncoder {
  ByteWriter& w;

  void operator()(const E2SetupRequest& m) {
    w.u32(m.node_id);
    w.list_len(m.ran_functions.size());
    for (const auto& f : m.ran_functions) {
      w.u32(f.id);
      w.str(f.name);
      w.str(f.description);
    }
  }
  void operator()(const E2SetupResponse& m) {
    w.u32(m.node_id);
    w.u8(m.accepted ? 1 : 0);
  }
  void operator()(const RicSubscriptionRequest& m) {
    w.u32(m.requestor_id);
    w.u32(m.ran_function_id);
    w.u32(m.report_period_ms);
  }
  void operator()(const RicSubscriptionResponse& m) {
    w.u32(m.subscription_id);
    w.u8(m.accepted ? 1 : 0);
  }
  void operator()(const RicIndication& m) {
    w.u32(m.subscription_id);
    write_report(w, m.report);
  }
  void operator()(const RicControlRequest& m) {
    w.u32(m.node_id);
    w.u32(m.ue_id);
    w.u32(m.control.target_cell);
    w.u32(m.control.ttt_ms);
  }
  void operator()(const RicControlAck& m) {
    w.u8(static_cast<std::uint8_t>(m.status));
  }
};

E2Message decode_payload(std::uint8_t type, ByteReader& r) {
  switch (type) {
    case 0x01: {
      E2SetupRequest m;
      m.node_id = r.u32();
      const std::uint16_t n = r.u16();
      m.ran_functions.reserve(n);
      for (std::uint16_t i = 0; i < n; ++i) {
        RanFunction f;
        f.id = r.u32();
        f.name = r.str();
        f.description = r.str();
        m.ran_functions.push_back(std::move(f));
      }
      return m;
    }
    case 0x02: {
      E2SetupResponse m;
      m.node_id = r.u32();
      m.accepted = r.u8() != 0;
      return m;
    }
    case 0x03: {
      RicSubscriptionRequest m;
      m.requestor_id = r.u32();
      m.ran_function_id = r.u32();
      m.report_period_ms = r.u32();
      return m;
    }
    case 0x04: {
      RicSubscriptionResponse m;
      m.subscription_id = r.u32();
      m.accepted = r.u8() != 0;
      return m;
    }
    case 0x05: {
      RicIndication m;
      m.subscription_id = r.u32();
      m.report = read_report(r);
      return m;
    }
    case 0x06: {
      RicControlRequest m;
      m.node_id = r.u32();
      m.ue_id = r.u32();
      m.control.target_cell = r.u32();
      m.control.ttt_ms = r.u32();
      return m;
    }
    case 0x07: {
      RicControlAck m;
      m.status = static_cast<ControlStatus>(r.u8());
      return m;
    }
    default:
      throw CodecError(CodecErrorCode::unknown_type,
                       "unknown message type tag " + std::to_string(type));
  }
}

}  // namespace

const char* message_name(const E2Message& msg) {
  static constexpr const char* kNames[] = {
      "E2SetupRequest",         "E2SetupResponse", "RicSubscriptionRequest",
      "RicSubscriptionResponse", "RicIndication",   "RicControlRequest",
      "RicControlAck"};
  return kNames[msg.index()];
}

std::vector<std::uint8_t> encode(const E2Message& msg) {
  ByteWriter payload;
  std::visit(PayloadEncoder{payload}, msg);
  std::vector<std::uint8_t> body = payload.take();

  ByteWriter frame;
  frame.u8(kMagic0);
  frame.u8(kMagic1);
  frame.u8(kVersion);
  frame.u8(static_cast<std::uint8_t>(msg.index() + 1));
  frame.u32(static_cast<std::uint32_t>(body.size()));
  std::vector<std::uint8_t> out = frame.take();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

E2Message decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw CodecError(CodecErrorCode::truncated, "frame shorter than header");
  }
  if (bytes[0] != kMagic0 || bytes[1] != kMagic1) {
    throw CodecError(CodecErrorCode::bad_magic, "bad magic bytes");
  }
  if (bytes[2] != kVersion) {
    throw CodecError(CodecErrorCode::unknown_version,
                     "unknown version " + std::to_string(bytes[2]));
  }
  const std::uint8_t type = bytes[3];
  std::uint32_t payload_len = 0;
  for (int i = 4; i < 8; ++i) payload_len = (payload_len << 8) | bytes[i];
  if (bytes.size() < kHeaderSize + payload_len) {
    throw CodecError(CodecErrorCode::truncated, "payload truncated");
  }
  if (bytes.size() > kHeaderSize + payload_len) {
    throw CodecError(CodecErrorCode::length_mismatch,
                     "trailing bytes after payload");
  }
  ByteReader reader(bytes.subspan(kHeaderSize, payload_len));
  E2Message msg = decode_payload(type, reader);
  if (reader.remaining() != 0) {
    throw CodecError(CodecErrorCode::length_mismatch,
                     "payload length disagrees with content");
  }
  return msg;
}

void FrameBuffer::append(std::span<const std::uint8_t> chunk) {
  buf_.insert(buf_.end(), chunk.begin(), chunk.end());
}

std::optional<std::vector<std::uint8_t>> FrameBuffer::next_frame() {
  if (buf_.size() < kHeaderSize) return std::nullopt;
  if (buf_[0] != kMagic0 || buf_[1] != kMagic1) {
    throw CodecError(CodecErrorCode::bad_magic, "stream desynchronized");
  }
  std::uint32_t payload_len = 0;
  for (int i = 4; i < 8; ++i) payload_len = (payload_len << 8) | buf_[i];
  const std::size_t frame_size = kHeaderSize + payload_len;
  if (buf_.size() < frame_size) return std::nullopt;
  std::vector<std::uint8_t> frame(buf_.begin(), buf_.begin() + frame_size);
  buf_.erase(buf_.begin(), buf_.begin() + frame_size);
  return frame;
}

}  // namespace oransim::e2
