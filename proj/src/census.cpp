#include "idxcap/census.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "idxcap/criticality.hpp"

namespace idxcap {

Digraph key_to_digraph(std::uint64_t key) {
    int n = static_cast<int>(key >> 56);
    Digraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if ((key >> (n * n - 1 - (i * n + j))) & 1u) g.add_edge(i, j);
        }
    return g;
}

std::vector<std::uint64_t> enumerate_digraph_keys(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("enumerate_digraph_keys: n out of range");
    std::vector<std::uint64_t> keys{canonical_key64(Digraph(1))};
    for (int m = 2; m <= n; ++m) {
        std::vector<std::uint64_t> parents = std::move(keys);
        std::unordered_set<std::uint64_t> found;
        std::mutex mu;
        int nthreads = std::min<int>(std::thread::hardware_concurrency() ? std::thread::hardware_concurrency() : 1,
                                     static_cast<int>(parents.size()));
        std::vector<std::thread> pool;
        std::size_t chunk = (parents.size() + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                std::unordered_set<std::uint64_t> mine;
                std::size_t lo = t * chunk, hi = std::min(parents.size(), (t + 1) * chunk);
                for (std::size_t p = lo; p < hi; ++p) {
                    Digraph base = key_to_digraph(parents[p]);
                    int v = m - 1;
                    std::uint32_t combos = 1u << (2 * v);
                    for (std::uint32_t c = 0; c < combos; ++c) {
                        Digraph g(m);
                        for (int i = 0; i < v; ++i)
                            for (int j = 0; j < v; ++j)
                                if (i != j && base.has_edge(i, j)) g.add_edge(i, j);
                        for (int i = 0; i < v; ++i) {
                            if ((c >> i) & 1u) g.add_edge(i, v);
                            if ((c >> (v + i)) & 1u) g.add_edge(v, i);
                        }
                        mine.insert(canonical_key64(g));
                    }
                }
                std::lock_guard<std::mutex> lk(mu);
                found.merge(mine);
            });
        }
        for (auto& th : pool) th.join();
        keys.assign(found.begin(), found.end());
        std::sort(keys.begin(), keys.end());
    }
    return keys;
}

std::vector<Digraph> enumerate_digraphs(int n) {
    std::vector<Digraph> out;
    for (std::uint64_t k : enumerate_digraph_keys(n)) out.push_back(key_to_digraph(k));
    return out;
}

CensusRecord classify(const Digraph& g, std::uint64_t instance_budget, bool with_bracket) {
    CensusRecord rec;
    rec.cert = canonical_form(g);
    rec.p1 = !is_strongly_connected(g);
    rec.p2 = !is_connected(underlying(complement(g)));
    for (int i = 0; i < g.n() && !rec.p4; ++i) {
        std::uint32_t row = g.out_row(i);
        while (row) {
            int j = std::countr_zero(row);
            row &= row - 1;
            if ((g.side_info(i) & ~g.side_info(j)) == 0) {
                rec.p4 = true;
                break;
            }
        }
    }
    Digraph gp = reduce_g_prime(g);
    if (gp != g && region_capacity_certified(gp)) rec.p3cert = true;
    if (with_bracket) {
        Budget bud(instance_budget);
        rec.bracket = beta_bracket(g, &bud);
    }
    return rec;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct ShardState {
    std::uint64_t cursor = 0;  // instances processed within the shard
    CensusTally tally;
};

std::string checkpoint_body(int n, int shards, const std::vector<ShardState>& st) {
    std::ostringstream os;
    os << "idxcap-census v1\n";
    os << "n " << n << "\n";
    os << "shards " << shards << "\n";
    for (int i = 0; i < shards; ++i) {
        const auto& s = st[i];
        os << "shard " << i << ' ' << s.cursor << ' ' << s.tally.total << ' ' << s.tally.p1 << ' ' << s.tally.p2
           << ' ' << s.tally.p3cert << ' ' << s.tally.p4 << ' ' << s.tally.remaining << "\n";
    }
    return os.str();
}

void write_checkpoint(const std::string& path, int n, int shards, const std::vector<ShardState>& st) {
    std::string body = checkpoint_body(n, shards, st);
    std::ostringstream os;
    os << body << "hash " << std::hex << fnv1a(body) << "\n";
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        f << os.str();
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("census checkpoint: rename failed");
}

std::vector<ShardState> read_checkpoint(const std::string& path, int n, int shards) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("census checkpoint: cannot open " + path);
    std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    auto pos = content.rfind("hash ");
    if (pos == std::string::npos) throw std::runtime_error("census checkpoint: missing hash");
    std::string body = content.substr(0, pos);
    std::uint64_t stored = std::stoull(content.substr(pos + 5), nullptr, 16);
    if (fnv1a(body) != stored) throw std::runtime_error("census checkpoint: content hash mismatch");
    std::istringstream is(body);
    std::string line;
    std::getline(is, line);
    if (line != "idxcap-census v1") throw std::runtime_error("census checkpoint: bad header");
    std::string tok;
    int fn = -1, fs = -1;
    is >> tok >> fn >> tok >> fs;
    if (fn != n || fs != shards) throw std::runtime_error("census checkpoint: n/shard mismatch");
    std::vector<ShardState> st(shards);
    for (int i = 0; i < shards; ++i) {
        int id;
        is >> tok >> id;
        if (tok != "shard" || id != i) throw std::runtime_error("census checkpoint: bad shard row");
        is >> st[i].cursor >> st[i].tally.total >> st[i].tally.p1 >> st[i].tally.p2 >> st[i].tally.p3cert >>
            st[i].tally.p4 >> st[i].tally.remaining;
    }
    return st;
}

std::string record_jsonl(std::uint64_t key, const CensusRecord& rec, bool with_bracket) {
    std::ostringstream os;
    os << "{\"cert\":\"" << to_hex(key_to_digraph(key)) << "\"";
    os << ",\"p1\":" << (rec.p1 ? "true" : "false");
    os << ",\"p2\":" << (rec.p2 ? "true" : "false");
    os << ",\"p3cert\":" << (rec.p3cert ? "true" : "false");
    os << ",\"p4\":" << (rec.p4 ? "true" : "false");
    if (with_bracket)
        os << ",\"lower\":\"" << to_string(rec.bracket.lower) << "\",\"upper\":\"" << to_string(rec.bracket.upper)
           << "\",\"tight\":" << (rec.bracket.tight() ? "true" : "false");
    os << "}";
    return os.str();
}

// Keep only the first `lines` lines of a shard output file (resume hygiene).
void truncate_lines(const std::string& path, std::uint64_t lines) {
    std::ifstream in(path);
    if (!in) return;
    std::string kept, line;
    std::uint64_t count = 0;
    while (count < lines && std::getline(in, line)) {
        kept += line;
        kept += '\n';
        ++count;
    }
    in.close();
    std::ofstream out(path, std::ios::trunc);
    out << kept;
}

}  // namespace

CensusTally run_census(int n, const CensusOptions& opts) {
    if (opts.shards < 1) throw std::invalid_argument("run_census: shards must be positive");
    std::vector<std::uint64_t> keys = enumerate_digraph_keys(n);
    int shards = opts.shards;
    std::vector<ShardState> st(shards);
    if (opts.resume) {
        if (opts.checkpoint_path.empty()) throw std::invalid_argument("run_census: resume needs a checkpoint path");
        st = read_checkpoint(opts.checkpoint_path, n, shards);
    }

    std::size_t per = (keys.size() + shards - 1) / shards;
    std::mutex mu;
    std::vector<int> pending;
    for (int i = 0; i < shards; ++i) pending.push_back(i);
    std::size_t next = 0;

    auto shard_file = [&](int i) { return opts.jsonl_path + ".shard" + std::to_string(i); };
    std::uint64_t processed = 0;
    for (const auto& s : st) processed += s.cursor;

    auto worker = [&] {
        while (true) {
            int shard;
            {
                std::lock_guard<std::mutex> lk(mu);
                if (next >= pending.size()) return;
                shard = pending[next++];
            }
            std::size_t lo = static_cast<std::size_t>(shard) * per;
            std::size_t hi = std::min(keys.size(), lo + per);
            std::uint64_t done = st[shard].cursor;
            if (lo + done >= hi && lo < hi) continue;
            std::ofstream jf;
            if (!opts.jsonl_path.empty()) {
                truncate_lines(shard_file(shard), done);
                jf.open(shard_file(shard), std::ios::app);
            }
            const std::uint64_t chunk = 512;
            std::size_t at = lo + done;
            while (at < hi) {
                {
                    std::lock_guard<std::mutex> lk(mu);
                    if (opts.stop_after && processed >= opts.stop_after) return;
                }
                std::size_t stop = std::min(hi, at + chunk);
                CensusTally part;
                std::string jbuf;
                for (std::size_t k = at; k < stop; ++k) {
                    CensusRecord rec = classify(key_to_digraph(keys[k]), opts.instance_budget, opts.with_bracket);
                    ++part.total;
                    part.p1 += rec.p1;
                    part.p2 += rec.p2;
                    part.p3cert += rec.p3cert;
                    part.p4 += rec.p4;
                    part.remaining += !(rec.p1 || rec.p2 || rec.p3cert || rec.p4);
                    if (jf.is_open()) jbuf += record_jsonl(keys[k], rec, opts.with_bracket) + "\n";
                }
                if (jf.is_open()) {
                    jf << jbuf;
                    jf.flush();
                }
                std::lock_guard<std::mutex> lk(mu);
                processed += stop - at;
                st[shard].cursor += stop - at;
                st[shard].tally.total += part.total;
                st[shard].tally.p1 += part.p1;
                st[shard].tally.p2 += part.p2;
                st[shard].tally.p3cert += part.p3cert;
                st[shard].tally.p4 += part.p4;
                st[shard].tally.remaining += part.remaining;
                if (!opts.checkpoint_path.empty()) write_checkpoint(opts.checkpoint_path, n, shards, st);
                at = stop;
            }
        }
    };

    int nthreads = std::max(1, std::min(opts.threads, shards));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    CensusTally total;
    for (const auto& s : st) {
        total.total += s.tally.total;
        total.p1 += s.tally.p1;
        total.p2 += s.tally.p2;
        total.p3cert += s.tally.p3cert;
        total.p4 += s.tally.p4;
        total.remaining += s.tally.remaining;
    }

    if (!opts.jsonl_path.empty()) {
        std::ofstream out(opts.jsonl_path, std::ios::trunc);
        for (int i = 0; i < shards; ++i) {
            std::ifstream in(shard_file(i));
            out << in.rdbuf();
        }
    }
    return total;
}

std::string tally_csv(const CensusTally& t) {
    std::ostringstream os;
    os << "flag,count\n";
    os << "total," << t.total << "\n";
    os << "p1," << t.p1 << "\n";
    os << "p2," << t.p2 << "\n";
    os << "p3cert," << t.p3cert << "\n";
    os << "p4," << t.p4 << "\n";
    os << "remaining," << t.remaining << "\n";
    return os.str();
}

}  // namespace idxcap
