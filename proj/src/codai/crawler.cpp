#include "codai/crawler.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "codai/errors.hpp"
#include "codai/url.hpp"

namespace fs = std::filesystem;

namespace codai::crawler {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool is_redirect_status(int status) {
    return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

std::string httplib_error_text(httplib::Error err) {
    switch (err) {
        case httplib::Error::Connection: return "connection failed";
        case httplib::Error::ConnectionTimeout: return "connection timeout";
        case httplib::Error::Read: return "read timeout or reset";
        case httplib::Error::Write: return "write failed";
        case httplib::Error::Canceled: return "request canceled";
        case httplib::Error::SSLConnection: return "tls handshake failed";
        case httplib::Error::SSLLoadingCerts: return "tls certificate loading failed";
        case httplib::Error::SSLServerVerification: return "tls verification failed";
        default: return "network error";
    }
}

std::string request_target(const url::Url& u) {
    std::string target = u.path.empty() ? "/" : u.path;
    if (!u.query.empty()) target += "?" + u.query;
    return target;
}

struct HopResult {
    bool ok = false;
    int status = 0;
    HeaderMap headers;
    std::string body;
    std::string location;
    std::string error;
};

HopResult perform_hop(const url::Url& u, const CrawlPolicy& policy,
                      const std::chrono::steady_clock::time_point& chain_start,
                      double* ttfb_seconds, bool* ttfb_recorded) {
    HopResult hop;
    std::string origin = u.scheme + "://" + u.authority();
    httplib::Client client(origin);
    client.set_follow_location(false);
    auto timeout = std::chrono::duration<double>(policy.timeout_seconds);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
    client.set_write_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    client.enable_server_certificate_verification(false);
#endif

    httplib::Headers request_headers = {{"User-Agent", policy.user_agent},
                                        {"Accept", "*/*"}};

    std::string body;
    auto result = client.Get(
        request_target(u), request_headers,
        [&](const httplib::Response& response) {
            if (!*ttfb_recorded) {
                *ttfb_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                              chain_start)
                                    .count();
                *ttfb_recorded = true;
            }
            hop.status = response.status;
            for (const auto& [name, value] : response.headers) {
                hop.headers.emplace(name, value);
            }
            return true;
        },
        [&](const char* data, size_t length) {
            body.append(data, length);
            return true;
        });

    if (!result) {
        hop.error = httplib_error_text(result.error());
        return hop;
    }
    hop.ok = true;
    hop.body = std::move(body);
    auto location = hop.headers.find("Location");
    if (location != hop.headers.end()) hop.location = location->second;
    return hop;
}

const char* kMetaFile = "meta.txt";
const char* kHeadersFile = "headers.txt";
const char* kBodyFile = "body.bin";

std::string outcome_token(Outcome outcome) {
    switch (outcome) {
        case Outcome::ok: return "ok";
        case Outcome::timeout: return "timeout";
        case Outcome::robots_excluded: return "robots-excluded";
    }
    return "?";
}

Outcome parse_outcome(const std::string& token) {
    if (token == "ok") return Outcome::ok;
    if (token == "timeout") return Outcome::timeout;
    if (token == "robots-excluded") return Outcome::robots_excluded;
    throw DataError("unknown outcome in corpus meta: " + token);
}

std::string read_whole_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_whole_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

// Timings are stored as decimal text and must survive a write/read round trip
// exactly; 17 significant digits round-trip any double.
std::string format_seconds(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

bool CaseInsensitiveLess::operator()(const std::string& a, const std::string& b) const {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(), [](unsigned char x, unsigned char y) {
            return std::tolower(x) < std::tolower(y);
        });
}

bool is_valid(const CrawlResult& result) {
    return result.outcome == Outcome::ok && result.http_status == 200 && !result.body.empty();
}

std::chrono::steady_clock::time_point PolitenessGate::acquire(const std::string& host_key,
                                                              double min_interval_seconds) {
    std::chrono::steady_clock::time_point start;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto now = std::chrono::steady_clock::now();
        auto it = next_allowed_.find(host_key);
        start = (it == next_allowed_.end() || it->second <= now) ? now : it->second;
        auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(min_interval_seconds));
        next_allowed_[host_key] = start + interval;
    }
    std::this_thread::sleep_until(start);
    return start;
}

bool RobotsCache::allowed(const std::string& scheme, const std::string& host,
                          const std::string& port, const std::string& path,
                          const CrawlPolicy& policy, PolitenessGate& gate) {
    std::string host_key = port.empty() ? host : host + ":" + port;
    std::vector<std::string> disallows;
    bool cached = false;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = disallow_by_host_.find(host_key);
        if (it != disallow_by_host_.end()) {
            disallows = it->second;
            cached = true;
        }
    }
    if (!cached) {
        gate.acquire(host_key, policy.per_host_min_interval_seconds);
        std::string origin = scheme + "://" + host_key;
        httplib::Client client(origin);
        auto timeout = std::chrono::duration<double>(policy.timeout_seconds);
        client.set_connection_timeout(
            std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
        client.set_read_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
        client.enable_server_certificate_verification(false);
#endif
        auto res = client.Get("/robots.txt", {{"User-Agent", policy.user_agent}});
        if (res && res->status == 200) {
            // keep rules from "User-agent: *" groups and groups naming our agent
            std::istringstream lines(res->body);
            std::string line;
            bool group_applies = false;
            bool in_group_header = false;
            std::string agent_lower = to_lower(policy.user_agent);
            while (std::getline(lines, line)) {
                auto hash = line.find('#');
                if (hash != std::string::npos) line.erase(hash);
                line = trim(line);
                if (line.empty()) continue;
                auto colon = line.find(':');
                if (colon == std::string::npos) continue;
                std::string field = to_lower(trim(line.substr(0, colon)));
                std::string value = trim(line.substr(colon + 1));
                if (field == "user-agent") {
                    std::string value_lower = to_lower(value);
                    bool matches = value == "*" ||
                                   agent_lower.rfind(value_lower, 0) == 0;
                    group_applies = in_group_header ? (group_applies || matches) : matches;
                    in_group_header = true;
                } else {
                    if (field == "disallow" && group_applies && !value.empty()) {
                        disallows.push_back(value);
                    }
                    in_group_header = false;
                }
            }
        }
        std::lock_guard<std::mutex> lock(mutex_);
        disallow_by_host_[host_key] = disallows;
    }
    std::string effective_path = path.empty() ? "/" : path;
    for (const std::string& rule : disallows) {
        if (effective_path.rfind(rule, 0) == 0) return false;
    }
    return true;
}

CrawlResult fetch_homepage(const std::string& firm_id, const std::string& requested_url,
                           const CrawlPolicy& policy, PolitenessGate& gate,
                           RobotsCache* robots) {
    CrawlResult result;
    result.firm_id = firm_id;
    result.requested_url = requested_url;
    result.fetched_at = current_utc_timestamp();

    auto parsed = url::parse(requested_url);
    if (!parsed || (parsed->scheme != "http" && parsed->scheme != "https")) {
        result.outcome = Outcome::timeout;
        result.final_url = requested_url;
        result.error = "unparsable or non-http(s) url";
        return result;
    }

    url::Url current = *parsed;
    auto chain_start = std::chrono::steady_clock::now();
    bool ttfb_recorded = false;
    int redirects = 0;

    while (true) {
        if (policy.respect_robots && robots != nullptr) {
            if (!robots->allowed(current.scheme, current.host, current.port,
                                 current.path.empty() ? "/" : current.path, policy, gate)) {
                result.outcome = Outcome::robots_excluded;
                result.final_url = current.serialize();
                result.scheme = current.scheme;
                result.redirect_count = redirects;
                result.error = "robots.txt disallows " + current.serialize();
                result.total_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - chain_start)
                        .count();
                result.ttfb_seconds = std::min(result.ttfb_seconds, result.total_seconds);
                return result;
            }
        }

        gate.acquire(current.authority(), policy.per_host_min_interval_seconds);
        HopResult hop = perform_hop(current, policy, chain_start, &result.ttfb_seconds,
                                    &ttfb_recorded);
        if (!hop.ok) {
            result.outcome = Outcome::timeout;
            result.final_url = current.serialize();
            result.scheme = current.scheme;
            result.redirect_count = redirects;
            result.error = hop.error;
            result.total_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - chain_start)
                    .count();
            if (!ttfb_recorded) result.ttfb_seconds = 0.0;
            result.ttfb_seconds = std::min(result.ttfb_seconds, result.total_seconds);
            return result;
        }

        if (is_redirect_status(hop.status) && !hop.location.empty() &&
            redirects < policy.max_redirects) {
            auto next = url::resolve(current, hop.location);
            if (next) {
                current = *next;
                ++redirects;
                continue;
            }
        }

        result.outcome = Outcome::ok;
        result.http_status = hop.status;
        result.final_url = current.serialize();
        result.scheme = current.scheme;
        result.redirect_count = redirects;
        result.response_headers = std::move(hop.headers);
        result.body = std::move(hop.body);
        result.total_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - chain_start).count();
        if (!ttfb_recorded) result.ttfb_seconds = result.total_seconds;
        result.ttfb_seconds = std::min(result.ttfb_seconds, result.total_seconds);
        return result;
    }
}

Corpus::Corpus(std::string directory) : directory_(std::move(directory)) {}

bool Corpus::contains(const std::string& firm_id) const {
    return fs::exists(fs::path(directory_) / firm_id / kMetaFile);
}

std::vector<std::string> Corpus::firm_ids() const {
    std::vector<std::string> ids;
    if (!fs::exists(directory_)) return ids;
    for (const auto& entry : fs::directory_iterator(directory_)) {
        if (entry.is_directory() && fs::exists(entry.path() / kMetaFile)) {
            ids.push_back(entry.path().filename().string());
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

void Corpus::write_entry(const CrawlResult& result) const {
    fs::path dir = fs::path(directory_) / result.firm_id;
    fs::create_directories(dir);

    std::ostringstream meta;
    meta << "requested_url: " << result.requested_url << "\n";
    meta << "final_url: " << result.final_url << "\n";
    meta << "outcome: " << outcome_token(result.outcome) << "\n";
    if (result.outcome == Outcome::ok) {
        meta << "status: " << result.http_status << "\n";
    }
    meta << "scheme: " << result.scheme << "\n";
    meta << "ttfb_seconds: " << format_seconds(result.ttfb_seconds) << "\n";
    meta << "total_seconds: " << format_seconds(result.total_seconds) << "\n";
    meta << "fetched_at: " << result.fetched_at << "\n";
    meta << "redirect_count: " << result.redirect_count << "\n";
    if (!result.error.empty()) {
        meta << "error: " << result.error << "\n";
    }
    write_whole_file(dir / kMetaFile, meta.str());

    std::ostringstream headers;
    for (const auto& [name, value] : result.response_headers) {
        headers << name << ": " << value << "\n";
    }
    write_whole_file(dir / kHeadersFile, headers.str());
    write_whole_file(dir / kBodyFile, result.body);
}

CrawlResult Corpus::read_entry(const std::string& firm_id) const {
    fs::path dir = fs::path(directory_) / firm_id;
    if (!fs::exists(dir / kMetaFile)) {
        throw NotFoundError("corpus has no entry for firm: " + firm_id);
    }

    CrawlResult result;
    result.firm_id = firm_id;

    std::istringstream meta(read_whole_file(dir / kMetaFile));
    std::string line;
    while (std::getline(meta, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto colon = line.find(": ");
        if (colon == std::string::npos) continue;
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 2);
        if (key == "requested_url") result.requested_url = value;
        else if (key == "final_url") result.final_url = value;
        else if (key == "outcome") result.outcome = parse_outcome(value);
        else if (key == "status") result.http_status = std::stoi(value);
        else if (key == "scheme") result.scheme = value;
        else if (key == "ttfb_seconds") result.ttfb_seconds = std::stod(value);
        else if (key == "total_seconds") result.total_seconds = std::stod(value);
        else if (key == "fetched_at") result.fetched_at = value;
        else if (key == "redirect_count") result.redirect_count = std::stoi(value);
        else if (key == "error") result.error = value;
    }

    if (fs::exists(dir / kHeadersFile)) {
        std::istringstream headers(read_whole_file(dir / kHeadersFile));
        while (std::getline(headers, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto colon = line.find(": ");
            if (colon == std::string::npos) continue;
            result.response_headers.emplace(line.substr(0, colon), line.substr(colon + 2));
        }
    }
    if (result.outcome == Outcome::ok && fs::exists(dir / kBodyFile)) {
        result.body = read_whole_file(dir / kBodyFile);
    }
    return result;
}

CrawlResult replay_fetch(const Corpus& corpus, const std::string& firm_id) {
    return corpus.read_entry(firm_id);
}

std::string current_utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

}  // namespace codai::crawler
