#include "floq/unitary_cache.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace floq {

namespace {

constexpr char kMagic[4] = {'F', 'L', 'Q', 'U'};
constexpr std::uint32_t kVersion = 1;

void put_bytes(std::vector<unsigned char>& buf, const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    buf.insert(buf.end(), b, b + n);
}

template <typename T> void put(std::vector<unsigned char>& buf, const T& v) {
    static_assert(std::is_trivially_copyable_v<T>);
    put_bytes(buf, &v, sizeof(T));
}

std::vector<unsigned char> encode_key(const UnitaryCacheKey& key) {
    std::vector<unsigned char> buf;
    put(buf, std::int32_t{key.sites});
    put(buf, key.field);
    put(buf, key.exchange);
    put(buf, key.base_frequency);
    put(buf, std::int32_t(key.multipliers.size()));
    for (int m : key.multipliers) put(buf, std::int32_t{m});
    put(buf, key.dt);
    put(buf, std::int32_t{key.series_order});
    put(buf, std::int32_t(key.method == StepMethod::MidpointExponential ? 0 : 1));
    return buf;
}

std::uint64_t fnv1a(const std::vector<unsigned char>& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

UnitaryCacheKey UnitaryCacheKey::make(const LatticeConfig& cfg, const DriveAssignment& drive,
                                      const PropagatorOptions& opts) {
    return UnitaryCacheKey{cfg.sites,  cfg.field, cfg.exchange,      drive.base_frequency,
                           drive.multipliers, opts.dt,   opts.series_order, opts.method};
}

std::filesystem::path cache_file_path(const std::filesystem::path& dir,
                                      const UnitaryCacheKey& key) {
    char name[32];
    std::snprintf(name, sizeof(name), "%016llx.flqu",
                  static_cast<unsigned long long>(fnv1a(encode_key(key))));
    return dir / name;
}

void store_unitary(const std::filesystem::path& dir, const UnitaryCacheKey& key,
                   const UnitaryMatrix& u) {
    std::filesystem::create_directories(dir);
    const std::vector<unsigned char> kb = encode_key(key);
    std::ofstream out(cache_file_path(dir, key), std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write unitary cache file in " + dir.string());
    out.write(kMagic, 4);
    const std::uint32_t version = kVersion;
    out.write(reinterpret_cast<const char*>(&version), sizeof(version));
    const std::uint64_t klen = kb.size();
    out.write(reinterpret_cast<const char*>(&klen), sizeof(klen));
    out.write(reinterpret_cast<const char*>(kb.data()), static_cast<std::streamsize>(kb.size()));
    const std::uint64_t dim = u.dim();
    out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
    out.write(reinterpret_cast<const char*>(u.data().data()),
              static_cast<std::streamsize>(u.data().size() * sizeof(cplx)));
    if (!out) throw ConfigError("short write to unitary cache file");
}

std::optional<UnitaryMatrix> try_load_unitary(const std::filesystem::path& dir,
                                              const UnitaryCacheKey& key) {
    const std::filesystem::path path = cache_file_path(dir, key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) return std::nullopt;
    std::uint32_t version = 0;
    in.read(reinterpret_cast<char*>(&version), sizeof(version));
    if (!in || version != kVersion) return std::nullopt;
    std::uint64_t klen = 0;
    in.read(reinterpret_cast<char*>(&klen), sizeof(klen));
    if (!in || klen > 1 << 20) return std::nullopt;
    std::vector<unsigned char> kb(klen);
    in.read(reinterpret_cast<char*>(kb.data()), static_cast<std::streamsize>(klen));
    if (!in || kb != encode_key(key)) return std::nullopt;
    std::uint64_t dim = 0;
    in.read(reinterpret_cast<char*>(&dim), sizeof(dim));
    if (!in || dim == 0 || dim > (1u << kMaxSites)) return std::nullopt;
    UnitaryMatrix u(dim, "U(T)");
    in.read(reinterpret_cast<char*>(u.data().data()),
            static_cast<std::streamsize>(dim * dim * sizeof(cplx)));
    if (!in) return std::nullopt;
    return u;
}

UnitaryMatrix cached_one_period_operator(const LatticeConfig& cfg, const DriveAssignment& drive,
                                         const PropagatorOptions& opts,
                                         const std::filesystem::path& dir) {
    if (dir.empty()) return one_period_operator(cfg, drive, opts);
    const UnitaryCacheKey key = UnitaryCacheKey::make(cfg, drive, opts);
    if (auto hit = try_load_unitary(dir, key)) return std::move(*hit);
    UnitaryMatrix u = one_period_operator(cfg, drive, opts);
    store_unitary(dir, key, u);
    return u;
}

} // namespace floq
