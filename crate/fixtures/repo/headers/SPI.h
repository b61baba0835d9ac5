#ifndef SPI_h
#define SPI_h

// Hardware serial peripheral interface master driver.

#define SPI_CLOCK_DIV4 0x00
#define SPI_CLOCK_DIV16 0x01
#define SPI_MODE0 0x00
#define SPI_MODE1 0x04

class SPISettings {
public:
  SPISettings(unsigned long clock, unsigned char bitOrder, unsigned char dataMode);
};

class SPIClass {
public:
  static void begin();
  static void end();
  static void beginTransaction(SPISettings settings);
  static void endTransaction();
  static unsigned char transfer(unsigned char data);
  static void setBitOrder(unsigned char order);
  static void setDataMode(unsigned char mode);
  static void setClockDivider(unsigned char divider);
};

#endif
