__all__ = ["core", "numerics", "breitwigner", "leemodel", "kinematics",
           "scenarios", "types", "files", "plotscript", "computation", "cli",
           "tools"]

__version__ = "1.0"
