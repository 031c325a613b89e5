import pytest

from dirac_symmetry import (
    CoefficientMode,
    ModelFileError,
    parse_model_text,
)

from conftest import poly

VALID = """\
# a three-level cascade
[system]
n_dof = 3
parameters = E
hamiltonian = q1*p2 + q2*p3

[primaries]
P1 = p1

[secondaries]
S1 = p2

[generators.good]
D1 = q1*p1

[options]
degree_bound = 4
on_shell_energy = true
coefficient_mode = polynomial
"""


class TestValidFiles:
    def test_full_parse(self):
        model = parse_model_text(VALID)
        assert model.system.space.n_dof == 3
        assert model.system.h_d == poly("q1*p2 + q2*p3", model.system.space)
        assert model.system.primary_names == ("P1",)
        assert model.declared_secondaries == (
            ("S1", poly("p2", model.system.space)),
        )
        assert model.declared_tertiaries is None
        assert set(model.generator_sets) == {"good"}
        assert model.options.degree_bound == 4
        assert model.options.on_shell_energy is True
        assert model.options.coefficient_mode is CoefficientMode.POLYNOMIAL

    def test_defaults(self):
        model = parse_model_text(
            "[system]\nn_dof = 1\nhamiltonian = p1^2\n"
        )
        assert model.system.space.parameters == ("E",)
        assert model.system.primaries == ()
        assert model.generator_sets == {}
        assert model.options.degree_bound is None
        assert model.options.on_shell_energy is None
        assert model.options.coefficient_mode is None

    def test_parameter_list_with_commas(self):
        model = parse_model_text(
            "[system]\nn_dof = 1\nparameters = E, m\nhamiltonian = m*p1^2\n"
        )
        assert model.system.space.parameters == ("E", "m")

    def test_names_keep_case(self):
        model = parse_model_text(
            "[system]\nn_dof = 1\nhamiltonian = p1^2\n[primaries]\nPi0 = p1\n"
        )
        assert model.system.primary_names == ("Pi0",)


class TestRejections:
    def test_unknown_section(self):
        with pytest.raises(ModelFileError, match="unknown section"):
            parse_model_text(VALID + "\n[extra]\nx = 1\n")

    def test_unknown_system_key(self):
        with pytest.raises(ModelFileError, match="unknown .system. keys"):
            parse_model_text(
                "[system]\nn_dof = 1\nhamiltonian = p1\nmass = 3\n"
            )

    def test_unknown_option_key(self):
        with pytest.raises(ModelFileError, match="unknown .options. keys"):
            parse_model_text(
                "[system]\nn_dof = 1\nhamiltonian = p1\n[options]\nfoo = 1\n"
            )

    def test_missing_system(self):
        with pytest.raises(ModelFileError, match="missing .system."):
            parse_model_text("[primaries]\nP1 = p1\n")

    def test_missing_hamiltonian(self):
        with pytest.raises(ModelFileError, match="hamiltonian"):
            parse_model_text("[system]\nn_dof = 1\n")

    def test_bad_n_dof(self):
        with pytest.raises(ModelFileError):
            parse_model_text("[system]\nn_dof = two\nhamiltonian = p1\n")
        with pytest.raises(ModelFileError):
            parse_model_text("[system]\nn_dof = 0\nhamiltonian = p1\n")

    def test_parameters_must_include_energy(self):
        with pytest.raises(ModelFileError, match="must include"):
            parse_model_text(
                "[system]\nn_dof = 1\nparameters = m\nhamiltonian = p1\n"
            )

    def test_bad_expression_reports_context(self):
        with pytest.raises(ModelFileError, match=r"\[primaries\] P1"):
            parse_model_text(
                "[system]\nn_dof = 1\nhamiltonian = p1\n[primaries]\nP1 = q9\n"
            )

    def test_duplicate_keys_rejected(self):
        with pytest.raises(ModelFileError):
            parse_model_text(
                "[system]\nn_dof = 1\nhamiltonian = p1\n"
                "[primaries]\nP1 = p1\nP1 = q1\n"
            )

    def test_empty_generator_set_rejected(self):
        with pytest.raises(ModelFileError, match="declares no generators"):
            parse_model_text(
                "[system]\nn_dof = 1\nhamiltonian = p1\n[generators.g]\n"
            )

    def test_dependent_generators_rejected(self):
        with pytest.raises(ModelFileError):
            parse_model_text(
                "[system]\nn_dof = 1\nhamiltonian = p1\n"
                "[generators.g]\nA = q1\nB = 2*q1\n"
            )

    def test_bad_option_values(self):
        base = "[system]\nn_dof = 1\nhamiltonian = p1\n[options]\n"
        with pytest.raises(ModelFileError):
            parse_model_text(base + "degree_bound = -1\n")
        with pytest.raises(ModelFileError):
            parse_model_text(base + "on_shell_energy = yes\n")
        with pytest.raises(ModelFileError):
            parse_model_text(base + "coefficient_mode = exotic\n")
