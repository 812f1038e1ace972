# setup.py
from setuptools import setup, find_packages

setup(
    name="treecross",
    version="0.1.0",
    description="🌳 Crossings of uniform random labelled trees in convex position — exact moments, size-bias couplings and normal approximation",
    long_description=open("README.md", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    license="MIT",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "click>=8.1",
        "rich>=13.7",           # Log handler, progress bar and spinners on stderr
        "psutil>=5.9",          # Physical core count for --threads auto
        "numpy>=1.22",          # PCG64 streams, vectorized crossing counts
        "scipy>=1.8",           # scipy.special.ndtr for the normal CDF
    ],
    extras_require={
        "test": [
            "pytest>=7.0",
            "hypothesis>=6.0",  # Property tests over random trees
            "mpmath>=1.3",      # Independent high-precision normal CDF
        ],
    },
    entry_points={
        "console_scripts": [
            "treecross=treecross.cli:cli",
        ],
    },
    python_requires=">=3.10",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: POSIX :: Linux",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords=[
        "random-trees", "pruefer-code", "crossings", "stein-method",
        "size-bias", "normal-approximation", "monte-carlo",
    ],
    include_package_data=True,
    zip_safe=False,
)
