#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "motivic/digest.hpp"
#include "motivic/numerics.hpp"

namespace motivic {

// exact text form of an mpfr value: precision and base-16 mantissa/exponent
inline std::string real_to_hex(const Real& x) {
    const auto* v = x.backend().data();
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 16, 0, v, MPFR_RNDN);
    std::string out = std::to_string(mpfr_get_prec(v)) + ":";
    if (mpfr_zero_p(v))
        out += "0";
    else if (!mpfr_number_p(v))
        out += s;
    else
        out += std::string(s) + "@" + std::to_string(static_cast<long>(e));
    mpfr_free_str(s);
    return out;
}

inline Real real_from_hex(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("real_from_hex: missing precision");
    long prec = std::stol(s.substr(0, colon));
    std::string body = s.substr(colon + 1);
    Real r;
    mpfr_set_prec(r.backend().data(), prec);
    if (body == "0") {
        mpfr_set_zero(r.backend().data(), 1);
        return r;
    }
    auto at = body.find('@');
    std::string mant = body.substr(0, at);
    if (at == std::string::npos) {
        mpfr_set_str(r.backend().data(), mant.c_str(), 16, MPFR_RNDN);
        return r;
    }
    long e = std::stol(body.substr(at + 1));
    // mpfr_get_str gives 0.MANT * 16^e
    bool neg = !mant.empty() && mant[0] == '-';
    std::string digits = neg ? mant.substr(1) : mant;
    std::string lit = (neg ? "-0." : "0.") + digits + "@" + std::to_string(e);
    if (mpfr_set_str(r.backend().data(), lit.c_str(), 16, MPFR_RNDN) != 0)
        throw std::invalid_argument("real_from_hex: bad literal " + s);
    return r;
}

inline nlohmann::json complex_to_json(const BigComplex& z) { return {real_to_hex(z.re), real_to_hex(z.im)}; }
inline BigComplex complex_from_json(const nlohmann::json& j) {
    return {real_from_hex(j.at(0).get<std::string>()), real_from_hex(j.at(1).get<std::string>())};
}

// content-addressed JSON blobs; one writer at a time via flock on <dir>/.lock
class Cache {
public:
    explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_ / "blobs");
        std::filesystem::create_directories(dir_ / "labels");
    }

    static std::string key_digest(const nlohmann::json& key) { return sha256_hex(key.dump()); }

    std::optional<nlohmann::json> get(const nlohmann::json& key) const {
        auto path = blob_path(key_digest(key));
        std::ifstream in(path);
        if (!in) return std::nullopt;
        nlohmann::json j;
        in >> j;
        if (j.at("key") != key) throw std::runtime_error("cache: digest collision at " + path.string());
        return j.at("value");
    }

    void put(const nlohmann::json& key, const nlohmann::json& value) {
        write_locked(blob_path(key_digest(key)), nlohmann::json{{"key", key}, {"value", value}}.dump());
    }

    // label -> curve digest, so cached values stay reachable without fixtures
    void remember_label(const std::string& label, const std::string& digest) {
        write_locked(dir_ / "labels" / (label + ".txt"), digest);
    }

    std::optional<std::string> digest_for(const std::string& label) const {
        std::ifstream in(dir_ / "labels" / (label + ".txt"));
        if (!in) return std::nullopt;
        std::string d;
        in >> d;
        return d;
    }

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path blob_path(const std::string& d) const { return dir_ / "blobs" / (d + ".json"); }

    void write_locked(const std::filesystem::path& path, const std::string& data) {
        auto lock = dir_ / ".lock";
        int fd = ::open(lock.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd < 0) throw std::runtime_error("cache: cannot open " + lock.string());
        if (::flock(fd, LOCK_EX) != 0) {
            ::close(fd);
            throw std::runtime_error("cache: cannot lock " + lock.string());
        }
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << data;
        }
        std::filesystem::rename(tmp, path);
        ::flock(fd, LOCK_UN);
        ::close(fd);
    }

    std::filesystem::path dir_;
};

}  // namespace motivic
