#include <bit>
#include <cerrno>
#include <cstring>
#include <fstream>

#include "slepian/io.hpp"

namespace slepian::io {

namespace {

static_assert(std::endian::native == std::endian::little, "binary dumps assume a little-endian host");

void put(std::ofstream& out, std::int64_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::int64_t get(std::ifstream& in, const std::filesystem::path& path) {
  std::int64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw io_error(path.string() + ": truncated header");
  return v;
}

}  // namespace

void write_dump(const std::filesystem::path& path, const dump& d) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error(path.string() + ": cannot open for writing: " + std::strerror(errno));
  for (std::int64_t v : {dump_magic, std::int64_t{1}, std::int64_t{d.dim}, std::int64_t{d.n},
                         static_cast<std::int64_t>(d.kind), std::int64_t{0}, std::int64_t{0}, std::int64_t{0}})
    put(out, v);
  out.write(reinterpret_cast<const char*>(d.values.data()),
            static_cast<std::streamsize>(d.values.size() * sizeof(cplx)));
  if (!out) throw io_error(path.string() + ": write failed: " + std::strerror(errno));
}

dump read_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path.string() + ": cannot open: " + std::strerror(errno));
  if (get(in, path) != dump_magic) throw io_error(path.string() + ": not a dump file");
  if (get(in, path) != 1) throw io_error(path.string() + ": unsupported dump version");
  dump d;
  d.dim = static_cast<int>(get(in, path));
  d.n = static_cast<int>(get(in, path));
  d.kind = static_cast<dump_kind>(get(in, path));
  for (int i = 0; i < 3; ++i) get(in, path);
  const std::uintmax_t bytes = std::filesystem::file_size(path) - 64;
  if (bytes % sizeof(cplx) != 0) throw io_error(path.string() + ": payload is not a whole number of values");
  d.values.resize(bytes / sizeof(cplx));
  if (!in.read(reinterpret_cast<char*>(d.values.data()), static_cast<std::streamsize>(bytes)))
    throw io_error(path.string() + ": truncated payload");
  return d;
}

}  // namespace slepian::io
