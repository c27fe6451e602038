#include "lambdajc/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace lambdajc::cli {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
    std::ostringstream out;
    out << "invalid config (" << errors.size() << " problem" << (errors.size() == 1 ? "" : "s")
        << "):";
    for (const std::string& e : errors) out << "\n  - " << e;
    return out.str();
}

struct Checker {
    const toml::Table& table;
    std::vector<std::string> errors;
    std::map<std::string, std::set<std::string>> allowed;  // section -> keys
    std::set<std::string> allowed_sections{""};

    explicit Checker(const toml::Table& t) : table(t) {}

    void note(const std::string& message) { errors.push_back(message); }

    const toml::Value* find(const std::string& section, const std::string& key,
                            bool required = false) {
        allowed_sections.insert(section);
        allowed[section].insert(key);
        auto sec = table.find(section);
        if (sec == table.end() || !sec->second.count(key)) {
            if (required)
                note("missing required key '" + (section.empty() ? key : section + "." + key) +
                     "'");
            return nullptr;
        }
        return &sec->second.at(key);
    }

    std::string where(const std::string& section, const std::string& key) {
        return section.empty() ? key : section + "." + key;
    }

    std::optional<double> number(const std::string& section, const std::string& key,
                                 bool required = false) {
        const toml::Value* v = find(section, key, required);
        if (!v) return std::nullopt;
        if (v->kind != toml::Value::Kind::Number) {
            note("'" + where(section, key) + "' must be a number");
            return std::nullopt;
        }
        return v->num;
    }

    std::optional<int> integer(const std::string& section, const std::string& key,
                               bool required = false) {
        auto num = number(section, key, required);
        if (!num) return std::nullopt;
        if (*num != std::floor(*num)) {
            note("'" + where(section, key) + "' must be an integer");
            return std::nullopt;
        }
        return static_cast<int>(*num);
    }

    std::optional<std::string> string(const std::string& section, const std::string& key,
                                      bool required = false) {
        const toml::Value* v = find(section, key, required);
        if (!v) return std::nullopt;
        if (v->kind != toml::Value::Kind::String) {
            note("'" + where(section, key) + "' must be a string");
            return std::nullopt;
        }
        return v->str;
    }

    std::optional<std::vector<double>> number_list(const std::string& section,
                                                   const std::string& key,
                                                   bool required = false) {
        const toml::Value* v = find(section, key, required);
        if (!v) return std::nullopt;
        if (v->kind != toml::Value::Kind::NumberArray) {
            note("'" + where(section, key) + "' must be an array of numbers");
            return std::nullopt;
        }
        return v->numbers;
    }

    // everything the schema never asked about is unknown
    void reject_unknown() {
        for (const auto& [section, keys] : table) {
            if (!allowed_sections.count(section)) {
                note("unknown section [" + section + "]");
                continue;
            }
            for (const auto& [key, value] : keys) {
                (void)value;
                if (!allowed[section].count(key)) note("unknown key '" + where(section, key) + "'");
            }
        }
    }
};

fock::FieldSpec parse_field(Checker& c, const std::string& section) {
    fock::FieldSpec spec;
    auto kind = c.string(section, "kind", true);

    // the full key set is registered up front: kind-irrelevant keys are
    // ignored rather than rejected
    auto alpha_sq = c.number(section, "alpha_sq");
    auto alpha_re = c.number(section, "alpha_re");
    auto alpha_im = c.number(section, "alpha_im");
    auto added = c.integer(section, "added_photons");
    auto xi_r = c.number(section, "xi_r");
    auto xi_phi = c.number(section, "xi_phi");
    auto fock_n = c.integer(section, "fock_n");

    if (alpha_sq && (alpha_re || alpha_im))
        c.note("[" + section + "] gives both alpha_sq and alpha_re/alpha_im");
    if (alpha_sq && *alpha_sq < 0.0) c.note("[" + section + "] alpha_sq must be >= 0");
    if (alpha_sq)
        spec.alpha = std::sqrt(std::max(0.0, *alpha_sq));
    else
        spec.alpha = {alpha_re.value_or(0.0), alpha_im.value_or(0.0)};
    if (added && *added < 0) c.note("[" + section + "] added_photons must be >= 0");
    spec.added_photons = std::max(0, added.value_or(0));
    spec.xi = std::polar(std::abs(xi_r.value_or(0.0)), xi_phi.value_or(0.0));
    if (xi_r && *xi_r < 0.0) c.note("[" + section + "] xi_r must be >= 0");
    if (fock_n && *fock_n < 0) c.note("[" + section + "] fock_n must be >= 0");
    spec.fock_n = std::max(0, fock_n.value_or(0));

    if (!kind) return spec;
    if (*kind == "coherent") spec.kind = fock::FieldKind::Coherent;
    else if (*kind == "pacs") spec.kind = fock::FieldKind::PhotonAdded;
    else if (*kind == "even_cat") spec.kind = fock::FieldKind::EvenCat;
    else if (*kind == "odd_cat") spec.kind = fock::FieldKind::OddCat;
    else if (*kind == "yurke_stoler") spec.kind = fock::FieldKind::YurkeStoler;
    else if (*kind == "squeezed_vacuum") spec.kind = fock::FieldKind::SqueezedVacuum;
    else if (*kind == "fock") spec.kind = fock::FieldKind::Fock;
    else c.note("[" + section + "] unknown kind '" + *kind + "'");

    if (spec.kind == fock::FieldKind::OddCat && spec.alpha == fock::Complex(0.0))
        c.note("[" + section + "] odd cat requires alpha != 0");
    return spec;
}

ModelParams parse_params(Checker& c) {
    ModelParams p;
    p.delta1 = c.number("params", "delta1").value_or(0.0);
    p.delta2 = c.number("params", "delta2").value_or(0.0);
    p.lambda1 = c.number("params", "lambda1").value_or(1.0);
    p.lambda2 = c.number("params", "lambda2").value_or(1.0);
    p.chi1 = c.number("params", "chi1").value_or(0.0);
    p.chi2 = c.number("params", "chi2").value_or(0.0);
    p.kappa1 = c.number("params", "kappa1").value_or(0.0);
    p.kappa2 = c.number("params", "kappa2").value_or(0.0);
    auto coupling = c.string("params", "coupling");
    if (coupling) {
        if (*coupling == "constant") p.coupling_form = CouplingForm::Constant;
        else if (*coupling == "sqrt_n") p.coupling_form = CouplingForm::SqrtN;
        else if (*coupling == "deformed_su11") p.coupling_form = CouplingForm::DeformedSU11;
        else c.note("params.coupling must be constant | sqrt_n | deformed_su11");
    }
    if (p.chi1 < 0.0 || p.chi2 < 0.0) c.note("params.chi must be >= 0");
    if (p.coupling_form == CouplingForm::DeformedSU11 &&
        (p.kappa1 < 0.0 || p.kappa1 > 1.0 || p.kappa2 < 0.0 || p.kappa2 > 1.0))
        c.note("params.kappa must lie in [0, 1]");
    return p;
}

CollapseSpec parse_collapse(Checker& c) {
    CollapseSpec spec;
    spec.window = c.number("collapse", "window").value_or(spec.window);
    spec.threshold = c.number("collapse", "threshold").value_or(spec.threshold);
    if (spec.window <= 0.0) c.note("collapse.window must be > 0");
    if (!(spec.threshold > 0.0 && spec.threshold < 1.0))
        c.note("collapse.threshold must lie in (0, 1)");
    return spec;
}

}  // namespace

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::Evolve: return "evolve";
        case Experiment::Eit: return "eit";
        case Experiment::KappaSweep: return "kappa_sweep";
        case Experiment::Validate: return "validate";
    }
    return "?";
}

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

ExperimentConfig parse_config(const toml::Table& table) {
    Checker c(table);
    ExperimentConfig config;

    auto experiment = c.string("", "experiment", true);
    bool known_experiment = false;
    if (experiment) {
        known_experiment = true;
        if (*experiment == "evolve") config.experiment = Experiment::Evolve;
        else if (*experiment == "eit") config.experiment = Experiment::Eit;
        else if (*experiment == "kappa_sweep") config.experiment = Experiment::KappaSweep;
        else if (*experiment == "validate") config.experiment = Experiment::Validate;
        else {
            c.note("experiment must be evolve | eit | kappa_sweep | validate");
            known_experiment = false;
        }
    }

    config.output = c.string("", "output").value_or("run");
    auto eps = c.number("", "cutoff_epsilon");
    if (eps) {
        if (!(*eps > 0.0 && *eps < 1.0)) c.note("cutoff_epsilon must lie in (0, 1)");
        else config.cutoff_epsilon = *eps;
    }
    auto ceiling = c.integer("", "cutoff_ceiling");
    if (ceiling) {
        if (*ceiling < 0) c.note("cutoff_ceiling must be >= 0");
        else config.cutoff_ceiling = *ceiling;
    }

    if (!known_experiment) {
        c.reject_unknown();
        throw ConfigError(std::move(c.errors));
    }

    if (config.experiment != Experiment::Validate) {
        if (!table.count("field1")) c.note("missing section [field1]");
        if (!table.count("field2")) c.note("missing section [field2]");
        config.field1 = parse_field(c, "field1");
        config.field2 = parse_field(c, "field2");
        config.params = parse_params(c);
        config.collapse = parse_collapse(c);
    }

    switch (config.experiment) {
        case Experiment::Evolve: {
            config.times.start = c.number("times", "start").value_or(0.0);
            config.times.stop = c.number("times", "stop", true).value_or(100.0);
            config.times.count = c.integer("times", "count", true).value_or(2000);
            if (config.times.count < 2) c.note("times.count must be >= 2");
            if (!(config.times.stop > config.times.start)) c.note("times.stop must exceed times.start");
            break;
        }
        case Experiment::Eit: {
            config.eit.delta1_min = c.number("eit", "delta1_min").value_or(config.eit.delta1_min);
            config.eit.delta1_max = c.number("eit", "delta1_max").value_or(config.eit.delta1_max);
            config.eit.count = c.integer("eit", "count").value_or(config.eit.count);
            if (auto t = c.number("eit", "t_star")) config.eit.t_star = *t;
            config.eit.window_tmax = c.number("eit", "tmax").value_or(config.eit.window_tmax);
            config.eit.window_samples =
                c.integer("eit", "samples").value_or(config.eit.window_samples);
            config.eit.chi2_list = c.number_list("eit", "chi2_list").value_or(std::vector<double>{});
            config.eit.delta2_list =
                c.number_list("eit", "delta2_list").value_or(std::vector<double>{});
            config.eit.kappa_list =
                c.number_list("eit", "kappa_list").value_or(std::vector<double>{});
            config.eit.alpha2_sq_list =
                c.number_list("eit", "alpha2_sq_list").value_or(std::vector<double>{});
            int sweeps = (!config.eit.chi2_list.empty()) + (!config.eit.delta2_list.empty()) +
                         (!config.eit.kappa_list.empty()) + (!config.eit.alpha2_sq_list.empty());
            if (sweeps > 1)
                c.note("[eit] allows at most one of chi2_list/delta2_list/kappa_list/alpha2_sq_list");
            if (!config.eit.alpha2_sq_list.empty() &&
                config.field2.kind != fock::FieldKind::Coherent)
                c.note("eit.alpha2_sq_list requires field2.kind = coherent");
            if (config.eit.count < 2) c.note("eit.count must be >= 2");
            if (!(config.eit.delta1_max > config.eit.delta1_min))
                c.note("eit.delta1_max must exceed eit.delta1_min");
            break;
        }
        case Experiment::KappaSweep: {
            config.times.start = c.number("times", "start").value_or(0.0);
            config.times.stop = c.number("times", "stop", true).value_or(100.0);
            config.times.count = c.integer("times", "count", true).value_or(2000);
            if (config.times.count < 2) c.note("times.count must be >= 2");
            auto list = c.number_list("kappa_sweep", "kappa_list", true);
            if (list) {
                config.kappa_list = *list;
                if (config.kappa_list.empty()) c.note("kappa_sweep.kappa_list must be nonempty");
                for (double k : config.kappa_list)
                    if (k < 0.0 || k > 1.0) c.note("kappa_sweep.kappa_list entries must lie in [0, 1]");
            }
            break;
        }
        case Experiment::Validate: {
            if (auto seed = c.number("validate", "seed"))
                config.validate.seed = static_cast<uint64_t>(*seed);
            config.validate.cases = c.integer("validate", "cases").value_or(config.validate.cases);
            config.validate.max_cutoff =
                c.integer("validate", "max_cutoff").value_or(config.validate.max_cutoff);
            config.validate.t_max = c.number("validate", "t_max").value_or(config.validate.t_max);
            config.validate.tolerance =
                c.number("validate", "tolerance").value_or(config.validate.tolerance);
            if (config.validate.cases < 1) c.note("validate.cases must be >= 1");
            if (config.validate.max_cutoff < 2) c.note("validate.max_cutoff must be >= 2");
            break;
        }
    }

    c.reject_unknown();
    if (!c.errors.empty()) throw ConfigError(std::move(c.errors));
    return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
    return parse_config(toml::parse(text));
}

ExperimentConfig parse_config_file(const std::string& path) {
    return parse_config(toml::parse_file(path));
}

void apply_override(toml::Table& table, const std::string& assignment) {
    size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("override must look like key=value or section.key=value");
    std::string path = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);
    std::string section, key;
    size_t dot = path.find('.');
    if (dot == std::string::npos) {
        key = path;
    } else {
        section = path.substr(0, dot);
        key = path.substr(dot + 1);
        if (key.find('.') != std::string::npos)
            throw std::runtime_error("override path has too many components: " + path);
    }
    toml::Value v = toml::parse_value(value);
    table[section][key] = v;
}

}  // namespace lambdajc::cli
