def test_imports():
    import pyfabgupta
    import pyfabgupta.bounds
    import pyfabgupta.cli
    import pyfabgupta.config
    import pyfabgupta.errors
    import pyfabgupta.lemmas
    import pyfabgupta.metric_enum
    import pyfabgupta.seqcomb
    import pyfabgupta.torsion
    import pyfabgupta.tree_group
    import pyfabgupta.utils

    assert pyfabgupta.__version__
