"""PBW bases of character Hopf algebras and their right coideal subalgebras."""

__version__ = "0.1.0"
