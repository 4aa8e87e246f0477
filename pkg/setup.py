from setuptools import find_packages, setup

setup(
    name='coordination-control',
    version='0.1.0',
    packages=find_packages(exclude=['*.tests', '*.tests.*']),
    include_package_data=True,
    package_data={'supervisory': ['templates/supervisory/*.txt', 'fixtures/*/*']},
    install_requires=['django', 'numpy'],
    python_requires='>=3.10',
    entry_points={
        'console_scripts': ['coordctl=supervisory.cli:main'],
    },
)
