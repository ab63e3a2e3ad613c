#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace codai::crawler {

struct CaseInsensitiveLess {
    bool operator()(const std::string& a, const std::string& b) const;
};

using HeaderMap = std::multimap<std::string, std::string, CaseInsensitiveLess>;

enum class Outcome : std::uint8_t {
    ok,              // an HTTP status was received
    timeout,         // network-level failure: DNS, refused connection, timeout
    robots_excluded, // request suppressed by robots rules; nothing was fetched
};

struct CrawlResult {
    std::string firm_id;
    std::string requested_url;
    std::string final_url;
    Outcome outcome = Outcome::timeout;
    int http_status = 0;           // meaningful only when outcome == ok
    std::string scheme;            // scheme of final_url: "http" or "https"
    double ttfb_seconds = 0.0;     // request start to first response byte
    double total_seconds = 0.0;    // request start to last body byte
    HeaderMap response_headers;
    std::string body;              // empty unless outcome == ok
    std::string fetched_at;        // UTC, ISO 8601
    int redirect_count = 0;
    std::string error;             // note for timeout/robots outcomes
};

struct CrawlPolicy {
    double timeout_seconds = 30.0;
    double per_host_min_interval_seconds = 1.0;
    int max_redirects = 5;
    std::string user_agent = "codai-crawler/1.0";
    bool respect_robots = true;
};

// true iff the fetch produced HTTP 200 with a nonempty body.
bool is_valid(const CrawlResult& result);

// Serializes request start times per host: consecutive starts to one host are
// spaced >= the policy interval. Shared across worker threads.
class PolitenessGate {
public:
    // Blocks until the host's next slot, then reserves it. Returns the start time.
    std::chrono::steady_clock::time_point acquire(const std::string& host_key,
                                                  double min_interval_seconds);

private:
    std::mutex mutex_;
    std::map<std::string, std::chrono::steady_clock::time_point> next_allowed_;
};

// Per-host robots.txt decisions, cached for the lifetime of the crawler run.
// Only "User-agent: *" groups and groups matching the policy user agent are
// honored; a rule matches by path prefix.
class RobotsCache {
public:
    bool allowed(const std::string& scheme, const std::string& host, const std::string& port,
                 const std::string& path, const CrawlPolicy& policy, PolitenessGate& gate);

private:
    std::mutex mutex_;
    std::map<std::string, std::vector<std::string>> disallow_by_host_;
};

// Fetches one homepage, following up to max_redirects. Network failures are
// data: the result carries a timeout marker and an error note, never throws.
CrawlResult fetch_homepage(const std::string& firm_id, const std::string& requested_url,
                           const CrawlPolicy& policy, PolitenessGate& gate,
                           RobotsCache* robots = nullptr);

// Offline corpus: one directory per firm holding meta.txt (status and timings
// as "key: value" lines), headers.txt (raw header lines) and body.bin.
class Corpus {
public:
    explicit Corpus(std::string directory);

    const std::string& directory() const { return directory_; }
    bool contains(const std::string& firm_id) const;
    std::vector<std::string> firm_ids() const;  // sorted

    void write_entry(const CrawlResult& result) const;
    CrawlResult read_entry(const std::string& firm_id) const;  // NotFoundError when absent

private:
    std::string directory_;
};

// Reconstructs the stored fetch bit-for-bit.
CrawlResult replay_fetch(const Corpus& corpus, const std::string& firm_id);

std::string current_utc_timestamp();

}  // namespace codai::crawler
