#ifndef EEPROM_h
#define EEPROM_h

// Byte-wise access to the on-chip eeprom.

class EEPROMClass {
public:
  unsigned char read(int address);
  void write(int address, unsigned char value);
  void update(int address, unsigned char value);
  unsigned int length();
};

#endif
