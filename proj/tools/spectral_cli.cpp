// Command-line front end: verify, search and scan

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spectral/criteria.hpp"
#include "spectral/errors.hpp"
#include "spectral/io.hpp"
#include "spectral/kernels.hpp"
#include "spectral/search.hpp"

using namespace spectral;
using io::json;

namespace
{
constexpr char const* tool_version = "0.1.0";

enum Exit
{
    exit_holds = 0,
    exit_fails = 1,
    exit_inconclusive = 2,
    exit_input = 3
};

int exit_code(Status s)
{
    switch (s)
    {
        case Status::holds:
            return exit_holds;
        case Status::fails:
            return exit_fails;
        case Status::inconclusive:
            return exit_inconclusive;
    }
    return exit_input;
}

//! Bad input detected by the front end itself
class UsageError : public Error
{
  public:
    using Error::Error;
};

struct Flags
{
    std::optional<double> tol;
    std::optional<double> radius;
    std::optional<std::string> grid;
    std::optional<std::string> period;
    std::optional<std::string> grid_step;
    std::optional<std::string> out;
    std::optional<int> threads;
    bool json_out{false};
    bool timings{false};
    bool all_reps{false};

    // scan
    std::string profile;
    std::optional<std::size_t> axis;
    std::optional<std::string> range;
};

class Timer
{
  public:
    void stage(std::string name)
    {
        auto now = std::chrono::steady_clock::now();
        if (!current_.empty())
            ms_[current_]
                += std::chrono::duration<double, std::milli>(now - start_).count();
        current_ = std::move(name);
        start_ = now;
    }
    json finish()
    {
        stage({});
        json out = json::object();
        for (auto const& [k, v] : ms_)
            out[k] = v;
        return out;
    }

  private:
    std::string current_;
    std::chrono::steady_clock::time_point start_;
    std::map<std::string, double> ms_;
};

void emit(std::string const& text, Flags const& f)
{
    if (f.out)
    {
        std::ofstream o(*f.out);
        if (!o)
            throw UsageError("cannot write " + *f.out);
        o << text;
    }
    else
    {
        std::cout << text;
    }
}

RVec parse_rational_list(std::string const& s)
{
    RVec out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(Rational::parse(item));
    if (out.empty())
        throw UsageError("empty rational list \"" + s + "\"");
    return out;
}

std::size_t parse_count(std::string const& s, char const* what)
{
    std::size_t pos = 0;
    long long n = 0;
    try
    {
        n = std::stoll(s, &pos);
    }
    catch (std::exception const&)
    {
        pos = 0;
    }
    if (pos != s.size() || n < 1)
        throw UsageError(std::string(what) + " must be a positive integer, got \""
                         + s + "\"");
    return static_cast<std::size_t>(n);
}

//---------------------------------------------------------------------------//
struct Context
{
    io::ProblemFile problem;
    Flags flags;

    double tol() const
    {
        return flags.tol.value_or(problem.parameters.tol.value_or(1e-9));
    }

    Domain const& domain() const
    {
        if (!problem.domain)
            throw UsageError("problem file has no \"domain\"");
        return *problem.domain;
    }
    Domain const& region() const
    {
        if (!problem.region)
            throw UsageError("problem file has no \"region\"");
        return *problem.region;
    }
    io::PointSetSpec const& pointset() const
    {
        if (!problem.pointset)
            throw UsageError("problem file has no \"pointset\"");
        return *problem.pointset;
    }
    PeriodicSet const& periodic() const
    {
        if (!pointset().periodic)
            throw UsageError("this check needs a periodic point set");
        return *pointset().periodic;
    }

    std::optional<double> radius() const
    {
        if (flags.radius)
            return flags.radius;
        return problem.parameters.radius;
    }

    //! Window from --radius when given, else the one in the file
    WindowSet windowed() const
    {
        auto const& ps = pointset();
        if (auto r = radius(); r && ps.periodic)
        {
            if (!(*r > 0))
                throw UsageError("radius must be positive");
            std::size_t const d = ps.periodic->dim();
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.9g", *r);
            auto const rr = Rational::parse(buf);
            return window(*ps.periodic, make_box(RVec(d, -rr), RVec(d, rr)));
        }
        if (!ps.windowed)
            throw UsageError("this check needs a window (pointset \"window\" "
                             "or --radius)");
        return *ps.windowed;
    }

    std::optional<std::size_t> grid_count() const
    {
        if (flags.grid)
            return parse_count(*flags.grid, "--grid");
        return problem.parameters.grid;
    }

    DefectOptions defect_options(std::size_t dim) const
    {
        DefectOptions o;
        o.tol = tol();
        std::size_t const per_unit = grid_count().value_or(64);
        o.grid = GridSpec::unit_cell(dim, per_unit);
        // Sample one full period cell of a periodic set
        if (problem.pointset && problem.pointset->periodic)
        {
            auto const periods
                = normalize_rectangular(*problem.pointset->periodic)
                      .lattice()
                      .periods();
            for (std::size_t j = 0; j < dim; ++j)
            {
                double const c = periods[j].to_double();
                o.grid->hi[j] = c;
                o.grid->n[j] = static_cast<std::size_t>(
                    std::ceil(c * static_cast<double>(per_unit)));
            }
        }
        o.rho = problem.parameters.rho;
        return o;
    }

    SearchProblem search_problem(Domain const& u) const
    {
        RVec period;
        if (flags.period)
            period = parse_rational_list(*flags.period);
        else if (problem.parameters.period)
            period = *problem.parameters.period;
        else
            throw UsageError("search needs a period (--period or parameters)");
        if (period.size() == 1 && u.dim() > 1)
            period = RVec(u.dim(), period[0]);

        // In search, --grid is the rational grid step
        Rational step{1};
        if (flags.grid_step)
            step = Rational::parse(*flags.grid_step);
        else if (flags.grid)
            step = Rational::parse(*flags.grid);
        else if (problem.parameters.grid_step)
            step = *problem.parameters.grid_step;

        SearchProblem p{u, period, step};
        p.normalize = !flags.all_reps
                      && problem.parameters.normalize.value_or(true);
        p.candidates = problem.parameters.candidates;
        return p;
    }
};

json report(std::string const& command)
{
    json r;
    r["command"] = command;
    r["tool_version"] = tool_version;
    return r;
}

json verdict_entry(std::string const& check, Verdict const& v)
{
    json e;
    e["check"] = check;
    auto const body = io::to_json(v);
    for (auto const& [k, x] : body.items())
        e[k] = x;
    return e;
}

//---------------------------------------------------------------------------//
// verify
//---------------------------------------------------------------------------//
int run_verify(std::string const& sub, Context const& c, json& rep, Timer& t)
{
    auto const tol = c.tol();
    Verdict v;
    std::optional<SpectrumCertificate> cert;

    t.stage("check");
    if (sub == "spectrum")
    {
        auto const& ps = c.pointset();
        if (ps.periodic && !c.flags.radius)
        {
            auto [pv, pc] = check_spectrum_periodic(c.domain(), *ps.periodic, tol);
            v = std::move(pv);
            cert = std::move(pc);
        }
        else
        {
            auto w = c.windowed();
            v = check_tiling_defect(c.domain(), w, c.defect_options(w.dim));
        }
    }
    else if (sub == "tiling")
    {
        v = check_set_tiling(c.domain(), c.periodic());
    }
    else if (sub == "packing")
    {
        auto w = c.windowed();
        v = check_packing_defect(c.domain(), w, c.defect_options(w.dim));
    }
    else if (sub == "orthogonality")
    {
        auto const& ps = c.pointset();
        if (ps.periodic && !c.flags.radius)
            v = check_orthogonality(c.domain(), *ps.periodic, tol);
        else
            v = check_orthogonality(c.domain(), c.windowed(), tol);
    }
    else if (sub == "opr")
    {
        v = check_opr(c.domain(), c.region(), tol);
    }
    else if (sub == "tight-pair")
    {
        v = check_tight_pair(c.domain(), c.region(), tol);
    }
    else if (sub == "keller")
    {
        v = check_keller(c.domain(), c.periodic(), c.region(), tol);
    }
    else if (sub == "transfer")
    {
        if (!c.problem.tiles)
            throw UsageError("problem file has no \"tiles\"");
        v = transfer_harness(c.problem.tiles->f, c.problem.tiles->g, c.periodic(),
                             tol);
    }
    else if (sub == "duality")
    {
        v = duality_roundtrip(c.domain(), c.region(), c.periodic(), tol);
    }
    else if (sub == "measure-bound")
    {
        v = check_opr_measure_bound(c.domain(), c.periodic(), c.region(), tol);
    }
    else
    {
        throw UsageError("unknown check \"" + sub + "\"");
    }

    t.stage("write");
    auto entry = verdict_entry(sub, v);
    if (cert)
        entry["certificate"] = io::to_json(*cert);
    rep["verdicts"] = json::array({entry});
    return exit_code(v.status);
}

//---------------------------------------------------------------------------//
// search
//---------------------------------------------------------------------------//
int run_search(std::string const& mode, Context const& c, json& rep, Timer& t)
{
    t.stage("check");
    if (mode == "duality-scan")
    {
        auto p = c.search_problem(c.domain());
        auto v = duality_scan(c.domain(), c.region(), p, c.tol());
        t.stage("write");
        rep["verdicts"] = json::array({verdict_entry(mode, v)});
        return exit_code(v.status);
    }

    auto p = c.search_problem(c.domain());
    if (mode == "spectra")
        p.mode = SearchMode::spectra;
    else if (mode == "tilings")
        p.mode = SearchMode::tilings;
    else
        throw UsageError("unknown search mode \"" + mode + "\"");

    auto sols = search(p);
    t.stage("write");
    json problem;
    problem["domain"] = io::to_json(p.domain);
    problem["period"] = io::to_json(p.period);
    problem["grid_step"] = io::to_json(p.grid_step);
    problem["normalize"] = p.normalize;
    problem["target_count"] = p.target_count();
    rep["problem"] = problem;
    rep["count"] = sols.size();
    json arr = json::array();
    for (auto const& s : sols)
        arr.push_back(io::to_json(s));
    rep["solutions"] = arr;
    return exit_holds;
}

//---------------------------------------------------------------------------//
// scan
//---------------------------------------------------------------------------//
std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string csv() const
    {
        std::string s;
        for (std::size_t i = 0; i < columns.size(); ++i)
            s += (i ? "," : "") + columns[i];
        s += '\n';
        for (auto const& r : rows)
        {
            for (std::size_t i = 0; i < r.size(); ++i)
                s += (i ? "," : "") + fmt(r[i]);
            s += '\n';
        }
        return s;
    }
};

int run_scan(Context const& c, json& rep, Timer& t, std::string& text)
{
    auto const& u = c.domain();
    std::size_t const d = u.dim();
    Table table;
    char const* coord = c.flags.profile == "power" ? "xi" : "x";
    for (std::size_t j = 0; j < d; ++j)
        table.columns.push_back(coord + std::to_string(j));
    table.columns.push_back("value");

    t.stage("check");
    if (c.flags.profile == "power")
    {
        if (!c.flags.range)
            throw UsageError("--profile power needs --range lo:hi:n");
        std::size_t const axis = c.flags.axis.value_or(0);
        if (axis >= d)
            throw UsageError("--axis out of range");
        auto const& r = *c.flags.range;
        auto p1 = r.find(':');
        auto p2 = r.find(':', p1 == std::string::npos ? p1 : p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw UsageError("--range must be lo:hi:n");
        double lo = 0, hi = 0;
        try
        {
            lo = std::stod(r.substr(0, p1));
            hi = std::stod(r.substr(p1 + 1, p2 - p1 - 1));
        }
        catch (std::exception const&)
        {
            throw UsageError("--range must be lo:hi:n");
        }
        std::size_t const n = parse_count(r.substr(p2 + 1), "--range count");
        std::vector<double> freqs(n * d, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            freqs[i * d + axis]
                = n == 1 ? lo
                         : lo + (hi - lo) * static_cast<double>(i)
                                    / static_cast<double>(n - 1);
        auto vals = kernels::power_profile(u, freqs);
        for (std::size_t i = 0; i < n; ++i)
        {
            std::vector<double> row(freqs.begin() + static_cast<long>(i * d),
                                    freqs.begin() + static_cast<long>((i + 1) * d));
            row.push_back(vals[i]);
            table.rows.push_back(std::move(row));
        }
    }
    else if (c.flags.profile == "defect")
    {
        auto w = c.windowed();
        auto grid = GridSpec::unit_cell(d, c.grid_count().value_or(64));
        auto vals = kernels::power_sum_parallel(u, w.points, grid);
        std::vector<double> x(d);
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            grid.point(i, x);
            auto row = x;
            row.push_back(vals[i] - 1.0);
            table.rows.push_back(std::move(row));
        }
    }
    else
    {
        throw UsageError("--profile must be power or defect");
    }

    t.stage("write");
    if (c.flags.json_out)
    {
        json rows = json::array();
        for (auto const& r : table.rows)
            rows.push_back(r);
        rep["columns"] = table.columns;
        rep["rows"] = rows;
    }
    else
    {
        text = table.csv();
    }
    return exit_holds;
}

//---------------------------------------------------------------------------//
void add_common(CLI::App* app, Flags& f)
{
    app->add_option("--tol", f.tol, "Zero tolerance");
    app->add_option("--radius", f.radius, "Window half-width");
    app->add_option("--grid", f.grid,
                    "Samples per axis (verify, scan) or grid step (search)");
    app->add_option("--period", f.period, "Diagonal period, e.g. 2 or 2,1");
    app->add_option("--grid-step", f.grid_step, "Rational grid step");
    app->add_option("--out", f.out, "Write the report to this path");
    app->add_option("--threads", f.threads, "OpenMP threads");
    app->add_flag("--json", f.json_out, "Scan: JSON rows instead of CSV");
    app->add_flag("--timings", f.timings, "Add per-stage timings");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral set and tiling verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    Flags flags;
    std::string sub, file;

    auto* verify = app.add_subcommand("verify", "Run one check on a problem file");
    verify->add_option("check", sub,
                       "spectrum | tiling | packing | orthogonality | opr | "
                       "tight-pair | keller | transfer | duality | measure-bound")
        ->required();
    verify->add_option("file", file, "Problem file")->required();
    add_common(verify, flags);

    auto* search_cmd = app.add_subcommand("search", "Enumerate periodic solutions");
    search_cmd->add_option("mode", sub, "spectra | tilings | duality-scan")
        ->required();
    search_cmd->add_option("file", file, "Problem file")->required();
    search_cmd->add_flag("--all", flags.all_reps,
                         "Do not fix the origin as a representative");
    add_common(search_cmd, flags);

    auto* scan = app.add_subcommand("scan", "Sample a profile to CSV");
    scan->add_option("--profile", flags.profile, "power | defect")->required();
    scan->add_option("--axis", flags.axis, "Frequency axis for power profiles");
    scan->add_option("--range", flags.range, "lo:hi:n");
    scan->add_option("file", file, "Problem file")->required();
    add_common(scan, flags);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::Success const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return exit_input;
    }

    Timer timer;
    timer.stage("parse");
    try
    {
        if (flags.threads)
            kernels::set_threads(*flags.threads);

        Context ctx{io::load_problem(file), flags};
        int code = exit_input;
        std::string text;
        json rep;

        if (verify->parsed())
        {
            rep = report("verify " + sub);
            code = run_verify(sub, ctx, rep, timer);
        }
        else if (search_cmd->parsed())
        {
            rep = report("search " + sub);
            code = run_search(sub, ctx, rep, timer);
        }
        else
        {
            rep = report("scan " + flags.profile);
            code = run_scan(ctx, rep, timer, text);
        }

        if (flags.timings)
            rep["timings"] = timer.finish();
        if (text.empty())
            text = rep.dump(2) + "\n";
        emit(text, flags);
        return code;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
}
