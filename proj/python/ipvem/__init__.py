from ._ipvem import (
    ConfigError,
    FormatError,
    GeometryError,
    Mesh,
    MeshError,
    SolveError,
    TopologyError,
    audit_one_hanging_node,
    dorfler_mark,
    fit_loglog_slope,
    gauss_lobatto,
    generate_mesh,
    load_mesh,
    load_mesh_file,
    refine,
    run_adaptive,
    run_uniform,
    save_mesh,
    save_mesh_json,
    solve,
    validate_mesh,
)

__all__ = [
    "ConfigError",
    "FormatError",
    "GeometryError",
    "Mesh",
    "MeshError",
    "SolveError",
    "TopologyError",
    "audit_one_hanging_node",
    "dorfler_mark",
    "fit_loglog_slope",
    "gauss_lobatto",
    "generate_mesh",
    "load_mesh",
    "load_mesh_file",
    "refine",
    "run_adaptive",
    "run_uniform",
    "save_mesh",
    "save_mesh_json",
    "solve",
    "validate_mesh",
]
