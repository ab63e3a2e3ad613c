#include "codai/wayback.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "codai/errors.hpp"
#include "codai/url.hpp"

namespace codai::wayback {

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

}  // namespace

SnapshotClient::SnapshotClient(Options options)
    : options_(std::move(options)), next_request_(std::chrono::steady_clock::now()) {
    load_cache();
}

void SnapshotClient::load_cache() {
    if (options_.cache_path.empty()) return;
    std::ifstream in(options_.cache_path);
    if (!in) return;  // first run: cache file appears on flush
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        std::string host = line.substr(0, tab);
        std::string year = line.substr(tab + 1);
        if (year == "-") {
            cache_[host] = std::nullopt;
        } else if (all_digits(year)) {
            cache_[host] = std::stoi(year);
        }
    }
}

std::optional<std::optional<int>> SnapshotClient::cache_get(const std::string& host) {
    auto it = cache_.find(host);
    if (it == cache_.end()) return std::nullopt;
    return it->second;
}

void SnapshotClient::cache_put(const std::string& host, std::optional<int> year) {
    cache_[host] = year;
    cache_dirty_ = true;
    if (options_.cache_path.empty()) return;
    // append-safe: one line per new answer
    std::ofstream out(options_.cache_path, std::ios::app);
    if (out) {
        out << host << '\t' << (year ? std::to_string(*year) : "-") << '\n';
        cache_dirty_ = false;
    }
}

void SnapshotClient::flush_cache() {
    if (options_.cache_path.empty() || !cache_dirty_) return;
    std::ofstream out(options_.cache_path, std::ios::trunc);
    if (!out) throw IoError("cannot write snapshot cache: " + options_.cache_path);
    for (const auto& [host, year] : cache_) {
        out << host << '\t' << (year ? std::to_string(*year) : "-") << '\n';
    }
    cache_dirty_ = false;
}

SnapshotLookup SnapshotClient::first_snapshot_year(const std::string& raw_url) {
    SnapshotLookup lookup;
    lookup.url = raw_url;

    auto parsed = url::parse(raw_url);
    std::string host = parsed ? parsed->host : raw_url;

    std::lock_guard<std::mutex> lock(mutex_);
    if (auto cached = cache_get(host)) {
        lookup.first_year = *cached;
        lookup.source = lookup.first_year ? Source::cache : Source::absent;
        return lookup;
    }
    if (options_.offline) {
        lookup.source = Source::absent;
        return lookup;
    }

    std::this_thread::sleep_until(next_request_);
    next_request_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(options_.rate_limit_seconds));

    httplib::Client client(options_.api_origin);
    auto timeout = std::chrono::duration<double>(options_.timeout_seconds);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    client.enable_server_certificate_verification(false);
#endif

    std::string path = "/cdx/search/cdx?url=" + host + "&output=text&fl=timestamp&limit=1";
    auto res = client.Get(path);
    if (!res) {
        throw IoError("archive index lookup failed for " + host + " (retryable)");
    }
    if (res->status != 200) {
        throw IoError("archive index returned HTTP " + std::to_string(res->status) + " for " +
                      host + " (retryable)");
    }

    std::istringstream body(res->body);
    std::string line;
    std::optional<int> year;
    while (std::getline(body, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string stamp = line.substr(0, line.find_first_of(" \t"));
        if (stamp.size() >= 4 && all_digits(stamp.substr(0, 4))) {
            year = std::stoi(stamp.substr(0, 4));
        }
        break;
    }

    cache_put(host, year);
    lookup.first_year = year;
    lookup.source = year ? Source::live : Source::absent;
    return lookup;
}

int years_old(std::optional<int> first_year, int reference_year, int cap) {
    if (!first_year) return 0;
    int age = reference_year - *first_year;
    if (age < 0) age = 0;
    return std::min(age, cap);
}

}  // namespace codai::wayback
