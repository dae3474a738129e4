#include "mhdbox/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "mhdbox/errors.hpp"

namespace mhdbox {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little endian");

constexpr char kSnapMagic[8] = {'M', 'H', 'D', 'S', 'N', 'A', 'P', '\0'};
constexpr char kCkptMagic[8] = {'M', 'H', 'D', 'C', 'K', 'P', 'T', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 4 * 8 + 4;
constexpr std::size_t kTrailerBytes = 8 + 8 + 8 + 8;

template <typename T>
void put(std::string& buf, const T& v) {
  const char* p = reinterpret_cast<const char*>(&v);
  buf.append(p, sizeof(T));
}

template <typename T>
T take(const std::string& buf, std::size_t& off) {
  T v;
  std::memcpy(&v, buf.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError(SnapshotError::Kind::Io, "cannot open \"" + path + "\"");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

std::string encode_snapshot(const MhdState& s, const SolverParams& p) {
  const Grid& g = *s.grid();
  std::string buf;
  buf.reserve(kHeaderBytes + 6 * g.size() * sizeof(double));
  buf.append(kSnapMagic, 8);
  put(buf, kVersion);
  put(buf, static_cast<std::uint32_t>(g.n));
  put(buf, g.l);
  put(buf, s.t);
  put(buf, p.nu);
  put(buf, p.eta);
  put(buf, static_cast<std::uint32_t>(6));
  VectorFieldR u = inverse_transform(s.u_hat);
  VectorFieldR b = inverse_transform(s.b_hat);
  for (int c = 0; c < 3; ++c) {
    buf.append(reinterpret_cast<const char*>(u[c].v.data()),
               u[c].v.size() * sizeof(double));
  }
  for (int c = 0; c < 3; ++c) {
    buf.append(reinterpret_cast<const char*>(b[c].v.data()),
               b[c].v.size() * sizeof(double));
  }
  return buf;
}

SnapshotHeader decode_header(const std::string& data) {
  if (data.size() < kHeaderBytes) {
    throw SnapshotError(SnapshotError::Kind::Truncated, "file shorter than the header");
  }
  if (std::memcmp(data.data(), kSnapMagic, 8) != 0) {
    throw SnapshotError(SnapshotError::Kind::BadMagic, "bad magic string");
  }
  std::size_t off = 8;
  SnapshotHeader h;
  h.version = take<std::uint32_t>(data, off);
  if (h.version != kVersion) {
    throw SnapshotError(SnapshotError::Kind::VersionMismatch,
                        "unsupported format version " + std::to_string(h.version));
  }
  h.n = take<std::uint32_t>(data, off);
  h.l = take<double>(data, off);
  h.t = take<double>(data, off);
  h.nu = take<double>(data, off);
  h.eta = take<double>(data, off);
  h.field_count = take<std::uint32_t>(data, off);
  return h;
}

SnapshotData decode_snapshot(const std::string& data, std::size_t payload_end) {
  SnapshotHeader h = decode_header(data);
  const std::size_t n3 =
      static_cast<std::size_t>(h.n) * h.n * h.n;
  const std::size_t expect = kHeaderBytes + h.field_count * n3 * sizeof(double);
  if (payload_end < expect) {
    throw SnapshotError(SnapshotError::Kind::Truncated,
                        "truncated payload: expected " + std::to_string(expect) +
                            " bytes, got " + std::to_string(payload_end));
  }
  if (payload_end > expect) {
    throw SnapshotError(SnapshotError::Kind::SizeMismatch,
                        "payload size does not match the header: expected " +
                            std::to_string(expect) + " bytes, got " +
                            std::to_string(payload_end));
  }
  if (h.field_count != 6) {
    throw SnapshotError(SnapshotError::Kind::SizeMismatch,
                        "expected 6 field arrays, header declares " +
                            std::to_string(h.field_count));
  }
  GridPtr grid = make_grid(static_cast<int>(h.n), h.l);
  SnapshotData out;
  out.header = h;
  out.state = MhdState(grid);
  out.state.t = h.t;
  std::size_t off = kHeaderBytes;
  VectorFieldR u(grid), b(grid);
  for (int c = 0; c < 3; ++c) {
    std::memcpy(u[c].v.data(), data.data() + off, n3 * sizeof(double));
    off += n3 * sizeof(double);
  }
  for (int c = 0; c < 3; ++c) {
    std::memcpy(b[c].v.data(), data.data() + off, n3 * sizeof(double));
    off += n3 * sizeof(double);
  }
  out.state.u_hat = transform(u);
  out.state.b_hat = transform(b);
  dealias(out.state.u_hat);
  dealias(out.state.b_hat);
  return out;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream outf(path, std::ios::binary | std::ios::trunc);
  if (!outf) throw SnapshotError(SnapshotError::Kind::Io, "cannot open \"" + path + "\" for writing");
  outf.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!outf) throw SnapshotError(SnapshotError::Kind::Io, "short write to \"" + path + "\"");
}

}  // namespace

void write_snapshot(const MhdState& s, const SolverParams& p, const std::string& path) {
  write_file(path, encode_snapshot(s, p));
}

SnapshotData read_snapshot(const std::string& path) {
  const std::string data = read_file(path);
  return decode_snapshot(data, data.size());
}

SnapshotHeader read_snapshot_header(const std::string& path) {
  return decode_header(read_file(path));
}

void write_checkpoint(const MhdState& s, const SolverParams& p, std::uint64_t step,
                      std::uint64_t config_hash, const std::string& path) {
  std::string buf = encode_snapshot(s, p);
  buf.append(kCkptMagic, 8);
  put(buf, step);
  put(buf, config_hash);
  put(buf, s.diss_accum);
  write_file(path, buf);
}

CheckpointData read_checkpoint(const std::string& path) {
  const std::string data = read_file(path);
  if (data.size() < kTrailerBytes + kHeaderBytes) {
    throw SnapshotError(SnapshotError::Kind::Truncated, "file shorter than a checkpoint");
  }
  const std::size_t trailer_off = data.size() - kTrailerBytes;
  if (std::memcmp(data.data() + trailer_off, kCkptMagic, 8) != 0) {
    throw SnapshotError(SnapshotError::Kind::BadMagic,
                        "missing checkpoint trailer (is this a plain snapshot?)");
  }
  CheckpointData out;
  out.snapshot = decode_snapshot(data, trailer_off);
  std::size_t off = trailer_off + 8;
  out.step = take<std::uint64_t>(data, off);
  out.config_hash = take<std::uint64_t>(data, off);
  out.snapshot.state.diss_accum = take<double>(data, off);
  return out;
}

bool is_checkpoint_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  in.seekg(0, std::ios::end);
  const std::streamoff size = in.tellg();
  if (size < static_cast<std::streamoff>(kTrailerBytes)) return false;
  in.seekg(size - static_cast<std::streamoff>(kTrailerBytes));
  char magic[8];
  in.read(magic, 8);
  return in && std::memcmp(magic, kCkptMagic, 8) == 0;
}

}  // namespace mhdbox
