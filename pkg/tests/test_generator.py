import json

import pytest

from prodviab import documents, generator, structure


def test_deterministic():
    cfg = generator.GeneratorConfig(seed=123)
    a = generator.generate_document(cfg)
    b = generator.generate_document(cfg)
    assert json.dumps(a) == json.dumps(b)


def test_different_seeds_differ():
    docs = {
        json.dumps(generator.generate_document(generator.GeneratorConfig(seed=s)))
        for s in range(10)
    }
    assert len(docs) > 5


def test_always_validates():
    for seed in range(50):
        sys = generator.generate_system(
            generator.GeneratorConfig(seed=seed, density=seed % 3 / 2)
        )
        assert sys.ell >= 1


def test_structure_toggles():
    for seed in range(25):
        dag = generator.generate_system(
            generator.GeneratorConfig(seed=seed, structure="dag")
        )
        assert structure.is_acyclic(dag)[0]
        rip = generator.generate_system(
            generator.GeneratorConfig(seed=seed, rip=True)
        )
        assert structure.satisfies_rip(rip)
        wrip = generator.generate_system(
            generator.GeneratorConfig(seed=seed, wrip=True)
        )
        assert structure.satisfies_wrip(wrip)


def test_size_ranges_respected():
    for seed in range(20):
        sys = generator.generate_system(
            generator.GeneratorConfig(seed=seed, ell_c=(2, 2), ell_p=(1, 3))
        )
        assert sys.ell_c == 2
        assert 1 <= sys.ell_p <= 3


def test_config_validation():
    with pytest.raises(ValueError):
        generator.GeneratorConfig(seed=1, structure="tree")
    with pytest.raises(ValueError):
        generator.GeneratorConfig(seed=1, density=1.5)
    with pytest.raises(ValueError):
        generator.GeneratorConfig(seed=1, ell_c=(0, 2))
    with pytest.raises(ValueError):
        generator.GeneratorConfig(seed=1, ell_p=(3, 1))
    with pytest.raises(ValueError):
        generator.GeneratorConfig(seed=1, max_population=0)


def test_documents_round_trip_through_parser():
    for seed in range(20):
        doc = generator.generate_document(generator.GeneratorConfig(seed=seed))
        sys = documents.system_from_document(doc)
        assert documents.system_to_document(sys) == doc
