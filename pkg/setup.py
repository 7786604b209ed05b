"""
Setup script for ColombeauEngine.
"""
from setuptools import setup, find_packages

setup(
    name="colombeau-engine",
    version="0.1.0",
    author="Colombeau Engine Team",
    description="Computable Colombeau generalized numbers, functionally compact sets and GSF",
    long_description=(
        "ColombeauEngine represents generalized numbers as nets over a finite "
        "epsilon grid, with exact asymptotic sums where possible. It decides "
        "order and membership up to negligible nets, verifies compact support "
        "of generalized smooth functions, and computes the generalized norms "
        "and metrics of the space of compactly supported GSF."
    ),
    packages=find_packages(exclude=["ColombeauEngine.tests", "ColombeauEngine.tests.*"]),
    python_requires=">=3.10",
    install_requires=[
        "pydantic>=2.5.0",
        "pydantic-settings>=2.1.0",
        "python-dotenv>=1.0.0",
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "sympy>=1.12",
        "mpmath>=1.3.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "hypothesis>=6.80.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "colombeau=ColombeauEngine.cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
