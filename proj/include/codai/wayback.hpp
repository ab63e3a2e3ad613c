#pragma once

#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace codai::wayback {

enum class Source { live, cache, absent };

struct SnapshotLookup {
    std::string url;
    std::optional<int> first_year;
    Source source = Source::absent;
};

// Earliest-capture lookups against an archive CDX index, with a host-keyed
// cache file consulted first. Live lookups are rate limited.
//
// Index API: GET /cdx/search/cdx?url=<host>&output=text&fl=timestamp&limit=1
// The response body's first line starts with a 14-digit capture timestamp
// (YYYYMMDDhhmmss); its first four digits are the capture year. An empty body
// means the host was never archived.
class SnapshotClient {
public:
    struct Options {
        std::string cache_path;                  // empty: in-memory cache only
        std::string api_origin = "http://web.archive.org";
        bool offline = false;                    // never touch the network
        double rate_limit_seconds = 1.0;
        double timeout_seconds = 30.0;
    };

    explicit SnapshotClient(Options options);

    // Cache first, then the live index unless offline. Network failure in live
    // mode raises IoError (retryable, distinct from an "absent" answer).
    SnapshotLookup first_snapshot_year(const std::string& url);

    void flush_cache();

private:
    Options options_;
    std::mutex mutex_;
    std::map<std::string, std::optional<int>> cache_;  // host -> year (nullopt: never archived)
    std::chrono::steady_clock::time_point next_request_;
    bool cache_dirty_ = false;

    void load_cache();
    std::optional<std::optional<int>> cache_get(const std::string& host);
    void cache_put(const std::string& host, std::optional<int> year);
};

// min(reference_year - first_year, cap); absent maps to 0.
int years_old(std::optional<int> first_year, int reference_year, int cap = 25);

}  // namespace codai::wayback
